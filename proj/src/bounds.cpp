#include <algorithm>
#include <limits>

#include "tnsc/error.hpp"
#include "tnsc/model.hpp"
#include "tnsc/pathfind.hpp"

namespace tnsc {

TraitBounds derive_bounds(const NetworkTopology& topology,
                          const SliceRequest& request, DisjointnessMode mode,
                          const TraitBounds& lower) {
  TraitBounds bounds;
  bounds.mode = BoundsMode::Derived;
  bounds.topology.l = lower.topology.l;
  bounds.device.l = lower.device.l;
  bounds.data_plane.l = lower.data_plane.l;

  std::int64_t ports = std::numeric_limits<std::int64_t>::max();
  for (const NodeId& end : {request.src, request.dst}) {
    const DeviceProfile* device = topology.device_at(end);
    if (device == nullptr) throw Error(ErrorCode::NoDevice, end);
    const PortGroup* group = device->find(request.port);
    if (group == nullptr)
      throw Error(ErrorCode::NoMatchingPorts, end, request.port.type);
    ports = std::min<std::int64_t>(ports, group->count);
  }
  bounds.device.h = ports;

  bounds.topology.h = max_disjoint_count(topology, request.src, request.dst, mode);

  std::int64_t slots = 0;
  for (const Link& link : topology.links()) {
    slots = slots == 0 ? link.slot_capacity
                       : std::min<std::int64_t>(slots, link.slot_capacity);
  }
  bounds.data_plane.h = slots;
  return bounds;
}

}  // namespace tnsc
