#include "tnsc/controller.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <utility>

#include "tnsc/error.hpp"

namespace tnsc {

std::string_view to_string(LinkState state) {
  return state == LinkState::Up ? "up" : "down";
}

std::string_view event_name(const Event& event) {
  struct Namer {
    std::string_view operator()(const RequestArrival&) const { return "request_arrival"; }
    std::string_view operator()(const RequestRelease&) const { return "request_release"; }
    std::string_view operator()(const LinkDown&) const { return "link_down"; }
    std::string_view operator()(const LinkUp&) const { return "link_up"; }
  };
  return std::visit(Namer{}, event.kind);
}

std::string_view to_string(ReconfigOrder order) {
  return order == ReconfigOrder::DescendingIndex ? "descending_index"
                                                 : "ascending_index";
}

std::string_view to_string(FailureAction action) {
  return action == FailureAction::MarkDegraded ? "mark_degraded" : "drop";
}

std::string_view to_string(ReconfigOutcome outcome) {
  switch (outcome) {
    case ReconfigOutcome::Readmitted: return "readmitted";
    case ReconfigOutcome::Degraded: return "degraded";
    case ReconfigOutcome::Dropped: return "dropped";
  }
  return "unknown";
}

Controller::Controller(NetworkTopology topology, ControllerConfig config)
    : topology_(std::move(topology)), config_(std::move(config)) {
  validate_bounds(config_.bounds);
  for (const Link& link : topology_.links()) {
    ledger_.residual_slots[link.id] = link.slot_capacity;
    ledger_.link_state[link.id] = LinkState::Up;
  }
  for (const DeviceProfile& device : topology_.devices())
    for (const PortGroup& group : device.port_groups)
      ledger_.residual_ports[{device.node, group.type, group.gbps}] = group.count;
}

const SliceEntry* Controller::find_slice(const SliceId& slice) const {
  auto it = slices_.find(slice);
  return it == slices_.end() ? nullptr : &it->second;
}

std::vector<bool> Controller::usable_links(int min_slots) const {
  std::vector<bool> usable;
  usable.reserve(topology_.links().size());
  for (const Link& link : topology_.links()) {
    usable.push_back(ledger_.link_state.at(link.id) == LinkState::Up &&
                     ledger_.residual_slots.at(link.id) >= min_slots);
  }
  return usable;
}

std::optional<FeasibilityVector> Controller::current_vector(
    const SliceRequest& request) const {
  if (config_.bounds.mode == BoundsMode::Static) {
    try {
      return build_vector(request, config_.bounds);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  // Derived against the residual network a search would see: up links with
  // at least s free slots.
  TraitBounds bounds = config_.bounds;
  PathOptions options;
  options.usable_links = usable_links(request.calendar_slots);
  options.srlg_budget = config_.srlg_budget;
  bounds.topology.h =
      max_disjoint_count(topology_, request.src, request.dst, config_.mode, options);

  std::int64_t ports = std::numeric_limits<std::int64_t>::max();
  for (const NodeId& end : {request.src, request.dst}) {
    auto it = ledger_.residual_ports.find({end, request.port.type, request.port.gbps});
    ports = std::min<std::int64_t>(ports, it == ledger_.residual_ports.end() ? 0 : it->second);
  }
  bounds.device.h = ports;

  std::int64_t slots = 0;
  bool any = false;
  for (std::size_t i = 0; i < topology_.links().size(); ++i) {
    if (!options.usable_links[i]) continue;
    const int residual = ledger_.residual_slots.at(topology_.links()[i].id);
    slots = any ? std::min<std::int64_t>(slots, residual) : residual;
    any = true;
  }
  bounds.data_plane.h = slots;

  try {
    return build_vector(request, bounds);
  } catch (const Error&) {
    return std::nullopt;
  }
}

FeasibilityIndex Controller::index_for(const SliceRequest& request,
                                       const FeasibilityVector& vector) const {
  return merge_index(vector, request.weights.value_or(config_.weights));
}

Controller::Plan Controller::plan(const SliceRequest& request) const {
  Plan out;
  out.record.slice_id = request.id;
  out.record.state = SliceState::Rejected;
  auto reject = [&](RejectReason reason, std::string detail) {
    out.record.rejection_reason = reason;
    out.record.reason_detail = std::move(detail);
    if (!out.vector && config_.bounds.mode == BoundsMode::Derived) {
      out.vector = current_vector(request);
      if (out.vector) out.index = index_for(request, *out.vector);
    }
    return out;
  };

  if (config_.bounds.mode == BoundsMode::Static) {
    try {
      out.vector = build_vector(request, config_.bounds);
      out.index = index_for(request, *out.vector);
    } catch (const OutOfRangeError& e) {
      return reject(RejectReason::OutOfRange, e.dimension());
    }
  }

  for (const NodeId& end : {request.src, request.dst}) {
    if (topology_.device_at(end) == nullptr) return reject(RejectReason::NoDevice, end);
  }
  for (const NodeId& end : {request.src, request.dst}) {
    auto it = ledger_.residual_ports.find({end, request.port.type, request.port.gbps});
    const int free = it == ledger_.residual_ports.end() ? 0 : it->second;
    if (free < request.client_ports) return reject(RejectReason::PortExhausted, end);
  }
  if (request.control_required && config_.control_context_cap &&
      ledger_.control_contexts.size() >= *config_.control_context_cap)
    return reject(RejectReason::ControlExhausted, "");

  PathOptions options;
  options.srlg_budget = config_.srlg_budget;
  options.usable_links = usable_links(request.calendar_slots);
  DisjointSearch search = find_disjoint_paths(
      topology_, request.src, request.dst, request.disjoint_paths, config_.mode, options);
  out.budget_exhausted = search.budget_exhausted;
  if (!search.ok()) {
    // Tell slot shortage apart from a lack of diversity in the up network.
    options.usable_links = usable_links(0);
    DisjointSearch unconstrained = find_disjoint_paths(
        topology_, request.src, request.dst, request.disjoint_paths, config_.mode, options);
    out.budget_exhausted = out.budget_exhausted || unconstrained.budget_exhausted;
    if (unconstrained.ok()) return reject(RejectReason::SlotExhausted, "");
    return reject(RejectReason::InsufficientDiversity,
                  "found=" + std::to_string(unconstrained.found));
  }

  if (config_.bounds.mode == BoundsMode::Derived) {
    out.vector = current_vector(request);
    if (!out.vector) return reject(RejectReason::OutOfRange, "derived");
    out.index = index_for(request, *out.vector);
  }

  AllocationRecord& record = out.record;
  record.state = SliceState::Active;
  record.paths = std::move(search.paths);
  for (const Path& path : record.paths)
    for (const LinkId& link : path.links) record.slots_per_link[link] = request.calendar_slots;
  for (const NodeId& end : {request.src, request.dst})
    record.ports_per_device[end] = {request.port, request.client_ports};
  if (request.control_required) record.control_context = "ctx/" + request.id;
  return out;
}

void Controller::commit(const SliceRequest& request, const AllocationRecord& record) {
  for (const auto& [link, slots] : record.slots_per_link)
    ledger_.residual_slots.at(link) -= slots;
  for (const auto& [node, holding] : record.ports_per_device)
    ledger_.residual_ports.at({node, holding.port.type, holding.port.gbps}) -= holding.count;
  if (record.control_context) ledger_.control_contexts[request.id] = *record.control_context;
}

void Controller::credit(AllocationRecord& record) {
  for (const auto& [link, slots] : record.slots_per_link)
    ledger_.residual_slots.at(link) += slots;
  for (const auto& [node, holding] : record.ports_per_device)
    ledger_.residual_ports.at({node, holding.port.type, holding.port.gbps}) += holding.count;
  ledger_.control_contexts.erase(record.slice_id);
  record.slots_per_link.clear();
  record.ports_per_device.clear();
  record.control_context.reset();
  record.paths.clear();
  record.stale = false;
}

AllocationRecord Controller::admit(const SliceRequest& request) {
  validate_request(request, &topology_);
  if (const SliceEntry* existing = find_slice(request.id)) {
    const SliceState state = existing->record.state;
    if (state == SliceState::Active || state == SliceState::Degraded)
      throw Error(ErrorCode::DuplicateSlice, request.id);
  }

  Plan p = plan(request);
  if (p.record.state == SliceState::Active) commit(request, p.record);

  SliceEntry& entry = slices_[request.id];
  entry.request = request;
  entry.record = std::move(p.record);
  entry.vector = std::move(p.vector);
  entry.index = p.index;
  entry.search_budget_exhausted = p.budget_exhausted;
  return entry.record;
}

void Controller::release(const SliceId& slice) {
  auto it = slices_.find(slice);
  if (it == slices_.end()) throw Error(ErrorCode::UnknownSlice, slice);
  AllocationRecord& record = it->second.record;
  if (record.state == SliceState::Released) throw Error(ErrorCode::AlreadyReleased, slice);
  if (record.state == SliceState::Rejected)
    throw Error(ErrorCode::UnknownSlice, slice, "slice was never admitted");
  credit(record);
  record.state = SliceState::Released;
}

std::vector<SliceId> Controller::apply_event(const Event& event) {
  if (last_seq_ && event.seq <= *last_seq_)
    throw Error(ErrorCode::StaleSequence, std::to_string(event.seq),
                "last processed " + std::to_string(*last_seq_));

  // Validate before recording the sequence number so a rejected event can
  // be corrected and resubmitted.
  if (const auto* down = std::get_if<LinkDown>(&event.kind)) topology_.link(down->link);
  if (const auto* up = std::get_if<LinkUp>(&event.kind)) topology_.link(up->link);

  std::vector<SliceId> affected;
  if (const auto* arrival = std::get_if<RequestArrival>(&event.kind)) {
    admit(arrival->request);
    affected.push_back(arrival->request.id);
  } else if (const auto* leave = std::get_if<RequestRelease>(&event.kind)) {
    release(leave->slice);
    affected.push_back(leave->slice);
  } else if (const auto* down = std::get_if<LinkDown>(&event.kind)) {
    LinkState& state = ledger_.link_state.at(down->link);
    if (state == LinkState::Up) {
      state = LinkState::Down;
      for (auto& [id, entry] : slices_) {
        AllocationRecord& record = entry.record;
        if (record.state != SliceState::Active) continue;
        if (!record.slots_per_link.contains(down->link)) continue;
        record.stale = true;
        affected.push_back(id);
      }
    }
  } else if (const auto* up = std::get_if<LinkUp>(&event.kind)) {
    ledger_.link_state.at(up->link) = LinkState::Up;
  }
  last_seq_ = event.seq;
  return affected;
}

ReconfigReport Controller::reconfigure(std::span<const SliceId> affected,
                                       const ReconfigPolicy& policy) {
  struct Pending {
    SliceId id;
    std::vector<Path> old_paths;
    std::optional<FeasibilityVector> vector;
    std::optional<FeasibilityIndex> index;
  };

  std::vector<Pending> pending;
  std::set<SliceId> seen;
  for (const SliceId& id : affected) {
    if (!seen.insert(id).second) continue;
    auto it = slices_.find(id);
    if (it == slices_.end() || it->second.record.state != SliceState::Active) continue;
    Pending item{id, it->second.record.paths, std::nullopt, std::nullopt};
    credit(it->second.record);
    pending.push_back(std::move(item));
  }

  // Indices are taken once every stale allocation has been returned, so all
  // affected slices are compared against the same network state.
  for (Pending& item : pending) {
    const SliceRequest& request = slices_.at(item.id).request;
    item.vector = current_vector(request);
    if (item.vector) item.index = index_for(request, *item.vector);
  }
  const bool descending = policy.order == ReconfigOrder::DescendingIndex;
  std::stable_sort(pending.begin(), pending.end(), [&](const Pending& x, const Pending& y) {
    if (x.index.has_value() != y.index.has_value()) return x.index.has_value();
    if (x.index && x.index->value != y.index->value)
      return descending ? x.index->value > y.index->value
                        : x.index->value < y.index->value;
    return x.id < y.id;
  });

  ReconfigReport report;
  for (Pending& item : pending) {
    SliceEntry& entry = slices_.at(item.id);
    Plan p = plan(entry.request);

    ReconfigEntry line;
    line.slice_id = item.id;
    line.old_paths = std::move(item.old_paths);
    line.vector = std::move(item.vector);
    line.index = item.index;

    if (p.record.state == SliceState::Active) {
      commit(entry.request, p.record);
      line.new_paths = p.record.paths;
      line.outcome = ReconfigOutcome::Readmitted;
    } else {
      p.record.state = policy.on_failure == FailureAction::MarkDegraded
                           ? SliceState::Degraded
                           : SliceState::Rejected;
      line.outcome = policy.on_failure == FailureAction::MarkDegraded
                         ? ReconfigOutcome::Degraded
                         : ReconfigOutcome::Dropped;
      line.reason = p.record.rejection_reason;
      line.reason_detail = p.record.reason_detail;
    }
    entry.record = std::move(p.record);
    entry.vector = line.vector;
    entry.index = line.index;
    entry.search_budget_exhausted = p.budget_exhausted;
    report.entries.push_back(std::move(line));
  }
  return report;
}

Snapshot Controller::snapshot() const {
  Snapshot snap;
  for (const Link& link : topology_.links()) {
    snap.links.push_back({link.id, link.slot_capacity - ledger_.residual_slots.at(link.id),
                          link.slot_capacity, ledger_.link_state.at(link.id)});
  }
  for (const DeviceProfile& device : topology_.devices()) {
    for (const PortGroup& group : device.port_groups) {
      const int free = ledger_.residual_ports.at({device.node, group.type, group.gbps});
      snap.ports.push_back({device.node, group.spec(), group.count - free, group.count});
    }
  }
  for (const auto& [id, entry] : slices_) snap.slices[id] = entry.record.state;
  return snap;
}

std::vector<std::string> Controller::audit() const {
  std::vector<std::string> problems;
  std::map<LinkId, int> held_slots;
  std::map<PortKey, int> held_ports;
  std::size_t contexts = 0;

  for (const auto& [id, entry] : slices_) {
    const AllocationRecord& record = entry.record;
    const SliceRequest& request = entry.request;
    const bool holds = record.state == SliceState::Active;
    if (!holds) {
      if (!record.slots_per_link.empty() || !record.ports_per_device.empty() ||
          record.control_context)
        problems.push_back(id + ": non-active record still holds resources");
      continue;
    }
    if (static_cast<int>(record.paths.size()) != request.disjoint_paths)
      problems.push_back(id + ": path count differs from disjoint_paths");
    if (!all_pairwise_disjoint(topology_, record.paths, config_.mode))
      problems.push_back(id + ": paths are not disjoint");
    std::set<LinkId> on_paths;
    for (const Path& path : record.paths) {
      try {
        validate_path(topology_, path);
      } catch (const Error& e) {
        problems.push_back(id + ": " + e.what());
      }
      on_paths.insert(path.links.begin(), path.links.end());
    }
    std::set<LinkId> charged;
    for (const auto& [link, slots] : record.slots_per_link) {
      charged.insert(link);
      if (slots != request.calendar_slots)
        problems.push_back(id + ": wrong slot count on " + link);
      held_slots[link] += slots;
    }
    if (charged != on_paths) problems.push_back(id + ": slot holdings do not match paths");
    for (const auto& [node, holding] : record.ports_per_device)
      held_ports[{node, holding.port.type, holding.port.gbps}] += holding.count;
    if (record.control_context.has_value() != request.control_required)
      problems.push_back(id + ": control context does not match trait c");
    if (record.control_context) {
      ++contexts;
      auto it = ledger_.control_contexts.find(id);
      if (it == ledger_.control_contexts.end() || it->second != *record.control_context)
        problems.push_back(id + ": control context missing from ledger");
    }
  }

  for (const Link& link : topology_.links()) {
    const int residual = ledger_.residual_slots.at(link.id);
    if (residual < 0 || residual > link.slot_capacity)
      problems.push_back(link.id + ": residual slots outside [0, capacity]");
    if (held_slots[link.id] + residual != link.slot_capacity)
      problems.push_back(link.id + ": slot conservation broken");
  }
  for (const DeviceProfile& device : topology_.devices()) {
    for (const PortGroup& group : device.port_groups) {
      const PortKey key{device.node, group.type, group.gbps};
      const int residual = ledger_.residual_ports.at(key);
      if (residual < 0 || residual > group.count)
        problems.push_back(device.node + ": residual ports outside [0, inventory]");
      if (held_ports[key] + residual != group.count)
        problems.push_back(device.node + ": port conservation broken");
    }
  }
  if (contexts != ledger_.control_contexts.size())
    problems.push_back("control context registry out of sync");
  return problems;
}

}  // namespace tnsc
