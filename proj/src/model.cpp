#include "tnsc/model.hpp"

#include <unordered_set>
#include <utility>

#include "tnsc/error.hpp"

namespace tnsc {

std::string_view to_string(Dimension dim) {
  switch (dim) {
    case Dimension::Topology: return "topology";
    case Dimension::Device: return "device";
    case Dimension::DataPlane: return "data_plane";
  }
  return "unknown";
}

Dimension parse_dimension(std::string_view label) {
  for (Dimension dim : kDimensions) {
    if (to_string(dim) == label) return dim;
  }
  throw Error(ErrorCode::UnknownDimension, std::string(label));
}

std::string_view to_string(SliceState state) {
  switch (state) {
    case SliceState::Active: return "active";
    case SliceState::Degraded: return "degraded";
    case SliceState::Rejected: return "rejected";
    case SliceState::Released: return "released";
  }
  return "unknown";
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::InsufficientDiversity: return "InsufficientDiversity";
    case RejectReason::PortExhausted: return "PortExhausted";
    case RejectReason::SlotExhausted: return "SlotExhausted";
    case RejectReason::NoDevice: return "NoDevice";
    case RejectReason::OutOfRange: return "OutOfRange";
    case RejectReason::ControlExhausted: return "ControlExhausted";
  }
  return "Unknown";
}

const PortGroup* DeviceProfile::find(const PortSpec& spec) const {
  for (const auto& group : port_groups) {
    if (group.type == spec.type && group.gbps == spec.gbps) return &group;
  }
  return nullptr;
}

NetworkTopology::NetworkTopology(TopologyDescription desc)
    : desc_(std::move(desc)) {
  for (std::size_t i = 0; i < desc_.nodes.size(); ++i)
    node_index_.emplace(desc_.nodes[i], i);
  for (std::size_t i = 0; i < desc_.links.size(); ++i)
    link_index_.emplace(desc_.links[i].id, i);
  for (std::size_t i = 0; i < desc_.devices.size(); ++i)
    device_index_.emplace(desc_.devices[i].node, i);
}

bool NetworkTopology::has_node(const NodeId& node) const {
  return node_index_.contains(node);
}

const Link* NetworkTopology::find_link(const LinkId& id) const {
  auto it = link_index_.find(id);
  return it == link_index_.end() ? nullptr : &desc_.links[it->second];
}

const Link& NetworkTopology::link(const LinkId& id) const {
  const Link* found = find_link(id);
  if (found == nullptr) throw Error(ErrorCode::UnknownLink, id);
  return *found;
}

const DeviceProfile* NetworkTopology::device_at(const NodeId& node) const {
  auto it = device_index_.find(node);
  return it == device_index_.end() ? nullptr : &desc_.devices[it->second];
}

NetworkTopology validate_topology(TopologyDescription raw) {
  std::unordered_set<NodeId> nodes;
  for (const auto& node : raw.nodes) {
    if (!nodes.insert(node).second) throw Error(ErrorCode::DuplicateId, node);
  }

  std::unordered_set<LinkId> link_ids;
  for (const auto& link : raw.links) {
    if (!link_ids.insert(link.id).second)
      throw Error(ErrorCode::DuplicateId, link.id);
    if (!nodes.contains(link.a)) throw Error(ErrorCode::DanglingEndpoint, link.a);
    if (!nodes.contains(link.b)) throw Error(ErrorCode::DanglingEndpoint, link.b);
    if (link.a == link.b)
      throw Error(ErrorCode::ValidationError, link.id, "self-loop");
    if (link.slot_capacity < 1)
      throw Error(ErrorCode::InvalidCapacity, link.id, "slot_capacity < 1");
    if (!(link.slot_gbps > 0.0))
      throw Error(ErrorCode::InvalidCapacity, link.id, "slot_gbps <= 0");
    if (link.cost < 0)
      throw Error(ErrorCode::InvalidCapacity, link.id, "negative cost");
  }

  std::unordered_set<NodeId> device_nodes;
  for (const auto& device : raw.devices) {
    if (!nodes.contains(device.node))
      throw Error(ErrorCode::DanglingEndpoint, device.node);
    if (!device_nodes.insert(device.node).second)
      throw Error(ErrorCode::DuplicateId, device.node, "second device on node");
    std::set<PortSpec> seen;
    for (const auto& group : device.port_groups) {
      if (group.count < 1 || !(group.gbps > 0.0))
        throw Error(ErrorCode::InvalidDevice, device.node,
                    "port group " + group.type + " needs count >= 1, gbps > 0");
      if (!seen.insert(group.spec()).second)
        throw Error(ErrorCode::InvalidDevice, device.node,
                    "duplicate port group " + group.type);
    }
  }
  return NetworkTopology(std::move(raw));
}

std::int64_t SliceRequest::trait(Dimension dim) const {
  switch (dim) {
    case Dimension::Topology: return disjoint_paths;
    case Dimension::Device: return client_ports;
    case Dimension::DataPlane: return calendar_slots;
  }
  return 0;
}

void validate_request(const SliceRequest& request,
                      const NetworkTopology* topology) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidRequest, request.id, why);
  };
  if (request.id.empty()) fail("empty id");
  if (request.src == request.dst) fail("src == dst");
  if (request.disjoint_paths < 2) fail("disjoint_paths < 2");
  if (request.client_ports < 1) fail("client_ports.count < 1");
  if (request.calendar_slots < 1) fail("calendar_slots < 1");
  if (request.weights) {
    for (Dimension dim : kDimensions) {
      if (!((*request.weights)[static_cast<int>(dim)] > 0.0))
        throw Error(ErrorCode::NonPositiveWeight, std::string(to_string(dim)));
    }
  }
  if (topology != nullptr) {
    if (!topology->has_node(request.src))
      throw Error(ErrorCode::UnknownNode, request.src);
    if (!topology->has_node(request.dst))
      throw Error(ErrorCode::UnknownNode, request.dst);
  }
}

const TraitRange& TraitBounds::operator[](Dimension dim) const {
  switch (dim) {
    case Dimension::Topology: return topology;
    case Dimension::Device: return device;
    case Dimension::DataPlane: break;
  }
  return data_plane;
}

TraitRange& TraitBounds::operator[](Dimension dim) {
  return const_cast<TraitRange&>(std::as_const(*this)[dim]);
}

void validate_bounds(const TraitBounds& bounds) {
  constexpr std::array<std::int64_t, 3> kMinLower = {2, 1, 1};
  for (Dimension dim : kDimensions) {
    const TraitRange& range = bounds[dim];
    std::string label{to_string(dim)};
    if (range.l < kMinLower[static_cast<int>(dim)])
      throw Error(ErrorCode::InvalidBounds, label,
                  "l below " + std::to_string(kMinLower[static_cast<int>(dim)]));
    if (bounds.mode == BoundsMode::Static && range.l > range.h)
      throw Error(ErrorCode::InvalidBounds, label, "l > h");
  }
}

void validate_path(const NetworkTopology& topology, const Path& path) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::ValidationError, "path", why);
  };
  if (path.nodes.size() < 2) fail("fewer than two nodes");
  if (path.links.size() + 1 != path.nodes.size()) fail("link count mismatch");
  std::unordered_set<NodeId> seen;
  for (const auto& node : path.nodes) {
    if (!seen.insert(node).second) fail("repeated node " + node);
  }
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    const Link* link = topology.find_link(path.links[i]);
    if (link == nullptr) fail("unknown link " + path.links[i]);
    const bool joins =
        (link->a == path.nodes[i] && link->b == path.nodes[i + 1]) ||
        (link->b == path.nodes[i] && link->a == path.nodes[i + 1]);
    if (!joins) fail("link " + link->id + " does not join its hop");
  }
}

}  // namespace tnsc
