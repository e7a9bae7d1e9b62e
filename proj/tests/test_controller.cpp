#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tnsc/controller.hpp"
#include "tnsc/error.hpp"

using namespace tnsc;
using namespace tnsc::testing;

namespace {

ControllerConfig static_config(DisjointnessMode mode = DisjointnessMode::NodeDisjoint) {
  ControllerConfig cfg;
  cfg.bounds = example_bounds();
  cfg.mode = mode;
  return cfg;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

Event arrival(std::uint64_t seq, SliceRequest r) { return {seq, RequestArrival{std::move(r)}}; }
Event down(std::uint64_t seq, LinkId l) { return {seq, LinkDown{std::move(l)}}; }
Event up(std::uint64_t seq, LinkId l) { return {seq, LinkUp{std::move(l)}}; }

// Five nodes: two unit-cost routes A-B-C and A-D-C plus a narrow bypass
// A-E-C of cost 4 with only 4 slots per link.
NetworkTopology five_node() {
  TopologyDescription desc;
  desc.nodes = {"A", "B", "C", "D", "E"};
  Link ae = make_link("L_AE", "A", "E", 4);
  Link ec = make_link("L_EC", "E", "C", 4);
  ae.cost = ec.cost = 2;
  desc.links = {make_link("L_AB", "A", "B"), make_link("L_BC", "B", "C"),
                make_link("L_AD", "A", "D"), make_link("L_DC", "D", "C"), ae, ec};
  desc.devices = {make_device("A", 48), make_device("C", 48)};
  return validate_topology(desc);
}

}  // namespace

TEST_CASE("fresh controller has full residuals") {
  Controller ctl(four_cycle(), static_config());
  const Snapshot snap = ctl.snapshot();
  for (const auto& l : snap.links) {
    CHECK(l.used == 0);
    CHECK(l.capacity == 20);
    CHECK(l.state == LinkState::Up);
  }
  for (const auto& p : snap.ports) CHECK(p.used == 0);
  CHECK(ctl.audit().empty());
}

TEST_CASE("admit TS_1 on the four-cycle") {
  Controller ctl(four_cycle(), static_config());
  const AllocationRecord rec = ctl.admit(ts1());
  CHECK(rec.state == SliceState::Active);
  REQUIRE(rec.paths.size() == 2);
  CHECK(rec.paths[0].nodes == std::vector<NodeId>{"A", "B", "C"});
  CHECK(rec.paths[1].nodes == std::vector<NodeId>{"A", "D", "C"});
  for (const auto& [link, slots] : rec.slots_per_link) CHECK(slots == 2);
  CHECK(rec.slots_per_link.size() == 4);
  CHECK(rec.ports_per_device.at("A").count == 15);
  CHECK(rec.ports_per_device.at("C").count == 15);
  CHECK(rec.control_context == "ctx/TS_1");

  for (const auto& l : ctl.snapshot().links) CHECK(l.used == 2);
  for (const auto& [key, residual] : ctl.ledger().residual_ports) CHECK(residual == 9);
  CHECK(ctl.ledger().control_contexts.at("TS_1") == "ctx/TS_1");
  CHECK(ctl.audit().empty());
}

TEST_CASE("second identical request exhausts ports") {
  Controller ctl(four_cycle(), static_config());
  ctl.admit(ts1());
  const ResourceLedger before = ctl.ledger();
  auto again = ts1();
  again.id = "TS_1b";
  const AllocationRecord rec = ctl.admit(again);
  CHECK(rec.state == SliceState::Rejected);
  CHECK(rec.rejection_reason == RejectReason::PortExhausted);
  CHECK(rec.reason_detail == "A");
  CHECK(ctl.ledger() == before);
}

TEST_CASE("three paths on the four-cycle is rejected for diversity") {
  for (auto mode : {BoundsMode::Static, BoundsMode::Derived}) {
    ControllerConfig cfg = static_config();
    cfg.bounds.mode = mode;
    Controller ctl(four_cycle(), cfg);
    auto r = ts1();
    r.disjoint_paths = 3;
    const AllocationRecord rec = ctl.admit(r);
    CHECK(rec.state == SliceState::Rejected);
    CHECK(rec.rejection_reason == RejectReason::InsufficientDiversity);
    CHECK(rec.reason_detail == "found=2");
  }
}

TEST_CASE("other rejection reasons") {
  Controller ctl(four_cycle(), static_config());
  auto r = ts1();
  r.id = "far";
  r.client_ports = 30;
  auto rec = ctl.admit(r);
  CHECK(rec.rejection_reason == RejectReason::OutOfRange);
  CHECK(rec.reason_detail == "device");

  r = ts1();
  r.id = "nodev";
  r.dst = "B";
  rec = ctl.admit(r);
  CHECK(rec.rejection_reason == RejectReason::NoDevice);
  CHECK(rec.reason_detail == "B");

  Controller narrow(four_cycle(3), static_config());
  r = ts1();
  r.calendar_slots = 4;
  rec = narrow.admit(r);
  CHECK(rec.rejection_reason == RejectReason::SlotExhausted);

  ControllerConfig capped = static_config();
  capped.control_context_cap = 0;
  Controller none(four_cycle(), capped);
  rec = none.admit(ts1());
  CHECK(rec.rejection_reason == RejectReason::ControlExhausted);
  auto plain = ts1();
  plain.control_required = false;
  CHECK(none.admit(plain).state == SliceState::Active);
  CHECK(none.ledger().control_contexts.empty());
}

TEST_CASE("rejected slices are kept in the registry") {
  Controller ctl(four_cycle(), static_config());
  auto r = ts1();
  r.disjoint_paths = 3;
  ctl.admit(r);
  REQUIRE(ctl.find_slice("TS_1") != nullptr);
  CHECK(ctl.find_slice("TS_1")->record.state == SliceState::Rejected);
  // A rejected id may be submitted again.
  CHECK(ctl.admit(ts1()).state == SliceState::Active);
  CHECK(code_of([&] { ctl.admit(ts1()); }) == ErrorCode::DuplicateSlice);
}

TEST_CASE("release restores the ledger") {
  Controller ctl(four_cycle(), static_config());
  const ResourceLedger fresh = ctl.ledger();
  const Snapshot snap = ctl.snapshot();
  ctl.admit(ts1());
  ctl.release("TS_1");
  CHECK(ctl.ledger() == fresh);
  CHECK(ctl.snapshot().links == snap.links);
  CHECK(ctl.snapshot().ports == snap.ports);
  CHECK(ctl.find_slice("TS_1")->record.state == SliceState::Released);
  CHECK(code_of([&] { ctl.release("TS_1"); }) == ErrorCode::AlreadyReleased);
  CHECK(code_of([&] { ctl.release("nobody"); }) == ErrorCode::UnknownSlice);
}

TEST_CASE("invalid requests throw") {
  Controller ctl(four_cycle(), static_config());
  auto r = ts1();
  r.src = "Q";
  CHECK(code_of([&] { ctl.admit(r); }) == ErrorCode::UnknownNode);
  r = ts1();
  r.disjoint_paths = 1;
  CHECK(code_of([&] { ctl.admit(r); }) == ErrorCode::InvalidRequest);
}

TEST_CASE("link events") {
  Controller ctl(four_cycle(), static_config());
  CHECK(ctl.apply_event(arrival(1, ts1())) == std::vector<SliceId>{"TS_1"});
  CHECK(ctl.apply_event(down(2, "L_AB")) == std::vector<SliceId>{"TS_1"});
  CHECK(ctl.find_slice("TS_1")->record.stale);
  CHECK(ctl.ledger().link_state.at("L_AB") == LinkState::Down);
  // Holdings stay debited while stale.
  CHECK(ctl.ledger().residual_slots.at("L_BC") == 18);
  CHECK(ctl.audit().empty());
  CHECK(ctl.apply_event(down(3, "L_AB")).empty());
  CHECK(ctl.apply_event(up(4, "L_AB")).empty());
  CHECK(ctl.ledger().link_state.at("L_AB") == LinkState::Up);
  CHECK(code_of([&] { ctl.apply_event(down(4, "L_BC")); }) == ErrorCode::StaleSequence);
  CHECK(code_of([&] { ctl.apply_event(down(5, "L_XX")); }) == ErrorCode::UnknownLink);
  // A failed event does not consume its seq.
  CHECK_NOTHROW(ctl.apply_event(down(5, "L_BC")));
}

TEST_CASE("link down on an idle link affects nothing") {
  Controller ctl(five_node(), static_config());
  ctl.admit(ts1());
  CHECK(ctl.apply_event(down(1, "L_AE")).empty());
}

TEST_CASE("empty reconfiguration") {
  Controller ctl(four_cycle(), static_config());
  CHECK(ctl.reconfigure({}).entries.empty());
}

TEST_CASE("single slice moves to the bypass") {
  Controller ctl(five_node(), static_config());
  ctl.admit(ts1());
  const auto affected = ctl.apply_event(down(1, "L_BC"));
  REQUIRE(affected == std::vector<SliceId>{"TS_1"});
  const ReconfigReport report = ctl.reconfigure(affected);
  REQUIRE(report.entries.size() == 1);
  const ReconfigEntry& e = report.entries[0];
  CHECK(e.outcome == ReconfigOutcome::Readmitted);
  CHECK(e.old_paths[0].nodes == std::vector<NodeId>{"A", "B", "C"});
  REQUIRE(e.new_paths.size() == 2);
  CHECK(e.new_paths[0].nodes == std::vector<NodeId>{"A", "D", "C"});
  CHECK(e.new_paths[1].nodes == std::vector<NodeId>{"A", "E", "C"});
  CHECK(e.index->value == doctest::Approx(54.0 / 83.0));
  CHECK_FALSE(ctl.find_slice("TS_1")->record.stale);
  CHECK(ctl.ledger().residual_slots.at("L_AB") == 20);
  CHECK(ctl.ledger().residual_slots.at("L_AE") == 2);
  CHECK(ctl.audit().empty());
}

TEST_CASE("reconfiguration order follows the policy") {
  auto big = make_request("TS_2", true, 2, 20, 4);
  for (auto order : {ReconfigOrder::DescendingIndex, ReconfigOrder::AscendingIndex}) {
    Controller ctl(five_node(), static_config());
    ctl.admit(ts1());
    ctl.admit(big);
    const auto affected = ctl.apply_event(down(1, "L_BC"));
    REQUIRE(affected.size() == 2);
    const auto report = ctl.reconfigure(affected, {order, FailureAction::MarkDegraded});
    REQUIRE(report.entries.size() == 2);
    const bool desc = order == ReconfigOrder::DescendingIndex;
    CHECK(report.entries[0].slice_id == (desc ? "TS_1" : "TS_2"));
    CHECK(report.entries[0].outcome == ReconfigOutcome::Readmitted);
    CHECK(report.entries[1].outcome == ReconfigOutcome::Degraded);
    CHECK(report.entries[1].reason == RejectReason::SlotExhausted);
    CHECK(ctl.find_slice(report.entries[1].slice_id)->record.state == SliceState::Degraded);
    CHECK(ctl.audit().empty());
  }
}

TEST_CASE("drop policy rejects the slice and releases everything") {
  auto big = make_request("TS_2", true, 2, 20, 4);
  Controller ctl(five_node(), static_config());
  ctl.admit(ts1());
  ctl.admit(big);
  const auto affected = ctl.apply_event(down(1, "L_BC"));
  const auto report =
      ctl.reconfigure(affected, {ReconfigOrder::DescendingIndex, FailureAction::Drop});
  CHECK(report.entries[1].outcome == ReconfigOutcome::Dropped);
  const SliceEntry* dropped = ctl.find_slice("TS_2");
  CHECK(dropped->record.state == SliceState::Rejected);
  CHECK(ctl.ledger().control_contexts.count("TS_2") == 0);
  CHECK(ctl.audit().empty());
}

TEST_CASE("degraded slices hold nothing and may be released") {
  auto big = make_request("TS_2", true, 2, 20, 4);
  Controller ctl(five_node(), static_config());
  ctl.admit(ts1());
  ctl.admit(big);
  ctl.reconfigure(ctl.apply_event(down(1, "L_BC")));
  const SliceEntry* d = ctl.find_slice("TS_2");
  CHECK(d->record.state == SliceState::Degraded);
  CHECK(d->record.paths.empty());
  CHECK(d->record.slots_per_link.empty());
  ctl.release("TS_2");
  CHECK(ctl.find_slice("TS_2")->record.state == SliceState::Released);
  CHECK(ctl.audit().empty());
}

TEST_CASE("derived admission reflects residual resources") {
  ControllerConfig cfg;
  cfg.mode = DisjointnessMode::NodeDisjoint;
  Controller ctl(four_cycle(), cfg);
  ctl.admit(ts1());
  const SliceEntry* e = ctl.find_slice("TS_1");
  REQUIRE(e->vector.has_value());
  CHECK((*e->vector)[Dimension::Device].h == 24);
  auto second = make_request("S2", false, 2, 5, 1);
  ctl.admit(second);
  const SliceEntry* s = ctl.find_slice("S2");
  CHECK((*s->vector)[Dimension::Device].h == 9);
  CHECK((*s->vector)[Dimension::DataPlane].h == 18);
}

TEST_CASE("determinism across identical runs") {
  auto run = [] {
    Controller ctl(five_node(), static_config());
    ctl.apply_event(arrival(1, ts1()));
    ctl.apply_event(arrival(2, make_request("TS_2", true, 2, 20, 4)));
    ctl.reconfigure(ctl.apply_event(down(3, "L_BC")));
    return std::pair{ctl.ledger(), ctl.snapshot()};
  };
  CHECK(run() == run());
}
