#ifndef TNSC_CONTROLLER_HPP
#define TNSC_CONTROLLER_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tnsc/feasibility.hpp"
#include "tnsc/model.hpp"
#include "tnsc/pathfind.hpp"

namespace tnsc {

struct PortKey {
  NodeId node;
  std::string type;
  double gbps = 0.0;

  auto operator<=>(const PortKey&) const = default;
};

enum class LinkState { Up, Down };
std::string_view to_string(LinkState state);

// Mutable resource accounting. Everything an admitted slice holds is debited
// here; topology capacities never change.
struct ResourceLedger {
  std::map<LinkId, int> residual_slots;
  std::map<PortKey, int> residual_ports;
  std::map<LinkId, LinkState> link_state;
  std::map<SliceId, std::string> control_contexts;

  bool operator==(const ResourceLedger&) const = default;
};

struct RequestArrival {
  SliceRequest request;
};
struct RequestRelease {
  SliceId slice;
};
struct LinkDown {
  LinkId link;
};
struct LinkUp {
  LinkId link;
};

struct Event {
  std::uint64_t seq = 0;
  std::variant<RequestArrival, RequestRelease, LinkDown, LinkUp> kind;
};

// "request_arrival", "request_release", "link_down" or "link_up".
std::string_view event_name(const Event& event);

enum class ReconfigOrder { DescendingIndex, AscendingIndex };
enum class FailureAction { MarkDegraded, Drop };
std::string_view to_string(ReconfigOrder order);
std::string_view to_string(FailureAction action);

struct ReconfigPolicy {
  ReconfigOrder order = ReconfigOrder::DescendingIndex;
  FailureAction on_failure = FailureAction::MarkDegraded;

  bool operator==(const ReconfigPolicy&) const = default;
};

struct ControllerConfig {
  TraitBounds bounds{.mode = BoundsMode::Derived};
  DisjointnessMode mode = DisjointnessMode::LinkDisjoint;
  ReconfigPolicy policy;
  Weights weights = kEqualWeights;
  // Unlimited when unset.
  std::optional<std::size_t> control_context_cap;
  std::size_t srlg_budget = 1000;
};

// Registry entry: the request, its current allocation and the feasibility
// evaluation behind the most recent decision.
struct SliceEntry {
  SliceRequest request;
  AllocationRecord record;
  std::optional<FeasibilityVector> vector;
  std::optional<FeasibilityIndex> index;
  bool search_budget_exhausted = false;
};

enum class ReconfigOutcome { Readmitted, Degraded, Dropped };
std::string_view to_string(ReconfigOutcome outcome);

struct ReconfigEntry {
  SliceId slice_id;
  std::vector<Path> old_paths;
  std::vector<Path> new_paths;
  std::optional<FeasibilityVector> vector;
  std::optional<FeasibilityIndex> index;
  ReconfigOutcome outcome = ReconfigOutcome::Readmitted;
  std::optional<RejectReason> reason;
  std::string reason_detail;
};

struct ReconfigReport {
  std::vector<ReconfigEntry> entries;  // in re-admission order
};

struct LinkUsage {
  LinkId link;
  int used = 0;
  int capacity = 0;
  LinkState state = LinkState::Up;

  bool operator==(const LinkUsage&) const = default;
};

struct PortUsage {
  NodeId node;
  PortSpec port;
  int used = 0;
  int capacity = 0;

  bool operator==(const PortUsage&) const = default;
};

struct Snapshot {
  std::vector<LinkUsage> links;  // topology order
  std::vector<PortUsage> ports;  // device order, then port-group order
  std::map<SliceId, SliceState> slices;

  bool operator==(const Snapshot&) const = default;
};

// Single-writer decision engine. Mutating calls must be serialized by the
// caller; const members may run concurrently on a copy.
class Controller {
 public:
  Controller(NetworkTopology topology, ControllerConfig config);

  // Rejections come back as a record in state `rejected` with the ledger
  // untouched. Throws Error(InvalidRequest | UnknownNode | DuplicateSlice)
  // for malformed requests or an id that is still admitted.
  AllocationRecord admit(const SliceRequest& request);

  // Throws Error(UnknownSlice | AlreadyReleased).
  void release(const SliceId& slice);

  // Returns the slices touched by the event; for link_down these are the
  // active slices whose paths cross the link, now marked stale.
  // Throws Error(StaleSequence | UnknownLink) and whatever admit/release throw.
  std::vector<SliceId> apply_event(const Event& event);

  // Releases the stale allocations, orders the slices by their current
  // feasibility index and re-admits them one by one. Never aborts: each
  // failure is recorded in its entry.
  ReconfigReport reconfigure(std::span<const SliceId> affected,
                             const ReconfigPolicy& policy);
  ReconfigReport reconfigure(std::span<const SliceId> affected) {
    return reconfigure(affected, config_.policy);
  }

  Snapshot snapshot() const;

  const NetworkTopology& topology() const { return topology_; }
  const ControllerConfig& config() const { return config_; }
  const ResourceLedger& ledger() const { return ledger_; }
  const std::map<SliceId, SliceEntry>& slices() const { return slices_; }
  const SliceEntry* find_slice(const SliceId& slice) const;

  // Conservation, capacity and per-record allocation invariants. Returns one
  // message per violation; empty when consistent.
  std::vector<std::string> audit() const;

 private:
  struct Plan {
    AllocationRecord record;
    std::optional<FeasibilityVector> vector;
    std::optional<FeasibilityIndex> index;
    bool budget_exhausted = false;
  };

  Plan plan(const SliceRequest& request) const;
  void commit(const SliceRequest& request, const AllocationRecord& record);
  void credit(AllocationRecord& record);
  std::vector<bool> usable_links(int min_slots) const;
  // Feasibility against the present residual network (derived mode) or the
  // configured static bounds.
  std::optional<FeasibilityVector> current_vector(const SliceRequest& request) const;
  FeasibilityIndex index_for(const SliceRequest& request,
                             const FeasibilityVector& vector) const;

  NetworkTopology topology_;
  ControllerConfig config_;
  ResourceLedger ledger_;
  std::map<SliceId, SliceEntry> slices_;
  std::optional<std::uint64_t> last_seq_;
};

}  // namespace tnsc

#endif  // TNSC_CONTROLLER_HPP
