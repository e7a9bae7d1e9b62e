#ifndef TNSC_MODEL_HPP
#define TNSC_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tnsc {

using NodeId = std::string;
using LinkId = std::string;
using SliceId = std::string;

// Numeric isolation dimensions, in the fixed order used by vectors and
// reports.
enum class Dimension { Topology = 0, Device = 1, DataPlane = 2 };

inline constexpr std::array<Dimension, 3> kDimensions = {
    Dimension::Topology, Dimension::Device, Dimension::DataPlane};

std::string_view to_string(Dimension dim);
// Throws Error(UnknownDimension).
Dimension parse_dimension(std::string_view label);

struct Link {
  LinkId id;
  NodeId a;
  NodeId b;
  std::set<std::uint32_t> srlgs;
  int slot_capacity = 20;
  double slot_gbps = 5.0;
  // Routing cost; unit by default.
  std::int64_t cost = 1;

  const NodeId& other(const NodeId& end) const { return end == a ? b : a; }
  bool touches(const NodeId& node) const { return a == node || b == node; }

  bool operator==(const Link&) const = default;
};

struct PortSpec {
  std::string type;
  double gbps = 0.0;

  auto operator<=>(const PortSpec&) const = default;
};

struct PortGroup {
  std::string type;
  double gbps = 0.0;
  int count = 0;

  PortSpec spec() const { return {type, gbps}; }
  bool operator==(const PortGroup&) const = default;
};

struct DeviceProfile {
  NodeId node;
  std::vector<PortGroup> port_groups;

  const PortGroup* find(const PortSpec& spec) const;
  bool operator==(const DeviceProfile&) const = default;
};

// Unvalidated topology as read from a file.
struct TopologyDescription {
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  std::vector<DeviceProfile> devices;

  bool operator==(const TopologyDescription&) const = default;
};

// Validated, immutable network. Only obtainable through validate_topology().
class NetworkTopology {
 public:
  const std::vector<NodeId>& nodes() const { return desc_.nodes; }
  const std::vector<Link>& links() const { return desc_.links; }
  const std::vector<DeviceProfile>& devices() const { return desc_.devices; }

  bool has_node(const NodeId& node) const;
  const Link* find_link(const LinkId& id) const;
  // Throws Error(UnknownLink).
  const Link& link(const LinkId& id) const;
  const DeviceProfile* device_at(const NodeId& node) const;

  TopologyDescription describe() const { return desc_; }

  bool operator==(const NetworkTopology& other) const {
    return desc_ == other.desc_;
  }

 private:
  friend NetworkTopology validate_topology(TopologyDescription raw);
  explicit NetworkTopology(TopologyDescription desc);

  TopologyDescription desc_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::unordered_map<LinkId, std::size_t> link_index_;
  std::unordered_map<NodeId, std::size_t> device_index_;
};

// Throws Error(DanglingEndpoint | DuplicateId | InvalidCapacity |
// InvalidDevice | ValidationError) naming the first offending element.
NetworkTopology validate_topology(TopologyDescription raw);

// Per-dimension weights used when merging numeric traits.
using Weights = std::array<double, 3>;
inline constexpr Weights kEqualWeights = {1.0, 1.0, 1.0};

struct SliceRequest {
  SliceId id;
  NodeId src;
  NodeId dst;
  bool control_required = false;  // trait c
  int disjoint_paths = 2;         // trait p
  PortSpec port;
  int client_ports = 1;    // trait d, required at each endpoint device
  int calendar_slots = 1;  // trait s, per traversed link
  std::optional<Weights> weights;

  std::int64_t trait(Dimension dim) const;
  bool operator==(const SliceRequest&) const = default;
};

// Structural checks; when `topology` is given the endpoints must exist.
// Throws Error(InvalidRequest | UnknownNode | NonPositiveWeight).
void validate_request(const SliceRequest& request,
                      const NetworkTopology* topology = nullptr);

struct TraitRange {
  std::int64_t l = 0;
  std::int64_t h = 0;

  bool operator==(const TraitRange&) const = default;
};

enum class BoundsMode { Static, Derived };

struct TraitBounds {
  TraitRange topology{2, 4};
  TraitRange device{1, 24};
  TraitRange data_plane{1, 20};
  BoundsMode mode = BoundsMode::Static;

  const TraitRange& operator[](Dimension dim) const;
  TraitRange& operator[](Dimension dim);
  bool operator==(const TraitBounds&) const = default;
};

// Lower bounds are always checked; l <= h only for static bounds, since
// derived upper bounds may legitimately fall below l.
// Throws Error(InvalidBounds).
void validate_bounds(const TraitBounds& bounds);

struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;  // links[i] joins nodes[i] and nodes[i + 1]
  std::int64_t cost = 0;

  bool operator==(const Path&) const = default;
};

// Throws Error(ValidationError) unless consecutive nodes are joined by the
// listed links and no node repeats.
void validate_path(const NetworkTopology& topology, const Path& path);

enum class SliceState { Active, Degraded, Rejected, Released };
std::string_view to_string(SliceState state);

enum class RejectReason {
  InsufficientDiversity,
  PortExhausted,
  SlotExhausted,
  NoDevice,
  OutOfRange,
  ControlExhausted,
};
std::string_view to_string(RejectReason reason);

struct PortHolding {
  PortSpec port;
  int count = 0;

  bool operator==(const PortHolding&) const = default;
};

struct AllocationRecord {
  SliceId slice_id;
  SliceState state = SliceState::Rejected;
  std::vector<Path> paths;
  std::map<LinkId, int> slots_per_link;
  std::map<NodeId, PortHolding> ports_per_device;
  std::optional<std::string> control_context;
  std::optional<RejectReason> rejection_reason;
  // Node, dimension or count the rejection refers to, e.g. "A" for
  // PortExhausted(A).
  std::string reason_detail;
  // Set while an active allocation traverses a failed link.
  bool stale = false;

  bool operator==(const AllocationRecord&) const = default;
};

enum class DisjointnessMode;

// Bounds for one request computed from the topology alone: topology.h is
// the maximum disjoint-path count between the endpoints, device.h the
// smaller matching port-group count of the two endpoint devices and
// data_plane.h the smallest slot capacity in the network.
// Throws Error(NoDevice | NoMatchingPorts).
TraitBounds derive_bounds(const NetworkTopology& topology,
                          const SliceRequest& request, DisjointnessMode mode,
                          const TraitBounds& lower = {});

}  // namespace tnsc

#endif  // TNSC_MODEL_HPP
