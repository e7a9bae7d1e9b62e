#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "tnsc/error.hpp"
#include "tnsc/feasibility.hpp"
#include "tnsc/io.hpp"
#include "tnsc/scenario.hpp"

using namespace tnsc;
using namespace tnsc::testing;

namespace {

const std::string kData = TNSC_TEST_DATA;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ErrorCode load_code(const std::string& text) {
  try {
    scenario_from_json(parse_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

const char* kTopo =
    R"({"nodes":["A","B","C","D"],"links":[{"id":"L_AB","a":"A","b":"B"},{"id":"L_BC","a":"B","b":"C"},
        {"id":"L_CD","a":"C","b":"D"},{"id":"L_DA","a":"D","b":"A"}],
        "devices":[{"node":"A","ports":[{"type":"10GE","gbps":10,"count":24}]},
                   {"node":"C","ports":[{"type":"10GE","gbps":10,"count":24}]}]})";
const char* kBounds =
    R"({"mode":"static","topology":{"l":2,"h":4},"device":{"l":1,"h":24},"data_plane":{"l":1,"h":20}})";

std::string scenario_text(const std::string& events) {
  return std::string(R"({"topology":)") + kTopo + R"(,"bounds":)" + kBounds +
         R"(,"mode":"link_disjoint","events":)" + events + "}";
}

}  // namespace

TEST_CASE("golden scenario loads") {
  const Scenario s = load_scenario(kData + "/golden_scenario.json");
  CHECK(s.topology.nodes().size() == 5);
  CHECK(s.events.size() == 6);
  CHECK(s.mode == DisjointnessMode::NodeDisjoint);
  CHECK(s.policy.order == ReconfigOrder::DescendingIndex);
}

TEST_CASE("malformed JSON is a parse error with a position") {
  try {
    parse_json("{\"nodes\": [\n  \"A\",\n  }");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.subject().find("line 3") != std::string::npos);
  }
}

TEST_CASE("load-time validation") {
  CHECK(load_code(scenario_text(R"([{"seq":1,"type":"link_down","link":"L_ZZ"}])")) ==
        ErrorCode::ValidationError);
  CHECK(load_code(scenario_text(R"([{"seq":1,"type":"request_release","slice":"X"}])")) ==
        ErrorCode::ValidationError);
  CHECK(load_code(scenario_text(
            R"([{"seq":2,"type":"link_up","link":"L_AB"},{"seq":2,"type":"link_up","link":"L_AB"}])")) ==
        ErrorCode::ValidationError);
  CHECK(load_code(scenario_text(R"([{"seq":1,"type":"teleport"}])")) == ErrorCode::ValidationError);
  CHECK(load_code(R"({"bounds":{},"events":[]})") == ErrorCode::ValidationError);
  CHECK_THROWS_AS(load_scenario(kData + "/does_not_exist.json"), Error);
}

TEST_CASE("empty event list") {
  const Scenario s = scenario_from_json(parse_json(scenario_text("[]")));
  const ScenarioReport r = run_scenario(s);
  CHECK(r.entries.empty());
  for (const auto& l : r.snapshot.links) CHECK(l.used == 0);
  for (const auto& p : r.snapshot.ports) CHECK(p.used == 0);
}

TEST_CASE("reference requests carry their indices") {
  Json events = Json::array();
  events.push_back({{"seq", 1}, {"type", "request_arrival"}, {"request", request_to_json(ts1())}});
  events.push_back({{"seq", 2}, {"type", "request_arrival"}, {"request", request_to_json(ts2())}});
  const Scenario s = scenario_from_json(parse_json(scenario_text(dump_json(events))));
  const ScenarioReport r = run_scenario(s);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].index->value == doctest::Approx(54.0 / 83.0));
  CHECK(format_3dp(r.entries[0].index->value) == "0.651");
  CHECK(r.entries[0].outcome == "admitted");
  // TS_1 leaves 9 ports at A; the static vector is still reported.
  CHECK(r.entries[1].outcome == "rejected");
  CHECK(r.entries[1].reason == "PortExhausted");
  CHECK(r.entries[1].reason_detail == "A");
  CHECK(r.entries[1].index->value == doctest::Approx(612.0 / 1027.0));
}

TEST_CASE("runtime errors become report outcomes") {
  const Scenario s = scenario_from_json(parse_json(scenario_text(
      R"([{"seq":1,"type":"request_arrival","request":{"id":"X","src":"A","dst":"C","control":false,"disjoint_paths":2,"client_ports":{"type":"10GE","gbps":10,"count":1},"calendar_slots":1}},
          {"seq":2,"type":"request_release","slice":"X"},
          {"seq":3,"type":"request_release","slice":"X"}])")));
  const ScenarioReport r = run_scenario(s);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[1].outcome == "released");
  CHECK(r.entries[2].outcome == "error");
  CHECK(r.entries[2].reason == "AlreadyReleased");
}

TEST_CASE("golden report is byte-identical") {
  const Scenario s = load_scenario(kData + "/golden_scenario.json");
  const std::string first = dump_json(report_to_json(run_scenario(s))) + "\n";
  const std::string second = dump_json(report_to_json(run_scenario(s))) + "\n";
  CHECK(first == second);
  CHECK(first == slurp(kData + "/golden_report.json"));
}

TEST_CASE("golden report matches the hand trace") {
  const ScenarioReport r = run_scenario(load_scenario(kData + "/golden_scenario.json"));
  REQUIRE(r.entries.size() == 8);
  CHECK(r.entries[2].action == "link_down");
  CHECK(r.entries[2].affected == std::vector<SliceId>{"TS_1", "TS_2"});
  CHECK(r.entries[3].action == "reconfigure");
  CHECK(r.entries[3].slice == "TS_1");
  CHECK(r.entries[3].outcome == "readmitted");
  CHECK(r.entries[3].paths[1].nodes == std::vector<NodeId>{"A", "E", "C"});
  CHECK(r.entries[4].slice == "TS_2");
  CHECK(r.entries[4].outcome == "degraded");
  CHECK(r.entries[4].reason == "SlotExhausted");
  CHECK(r.entries[3].index->value > r.entries[4].index->value);
  CHECK(r.entries[4].index->value == doctest::Approx(48.0 / 127.0));
  CHECK(r.snapshot.slices.at("TS_2") == SliceState::Released);
}

TEST_CASE("report values re-verify through normalization") {
  const ScenarioReport r = run_scenario(load_scenario(kData + "/golden_scenario.json"));
  for (const auto& e : r.entries) {
    if (!e.vector) continue;
    for (const auto& t : e.vector->numeric_traits)
      CHECK(t.value == normalize_falling(t.r, t.l, t.h));
  }
}

TEST_CASE("scenario round-trip") {
  const Scenario s = load_scenario(kData + "/golden_scenario.json");
  const Scenario again = scenario_from_json(parse_json(dump_json(scenario_to_json(s))));
  CHECK(again.topology == s.topology);
  CHECK(again.bounds == s.bounds);
  CHECK(again.mode == s.mode);
  CHECK(again.policy == s.policy);
  CHECK(again.weights == s.weights);
  CHECK(dump_json(scenario_to_json(again)) == dump_json(scenario_to_json(s)));
}

TEST_CASE("three-decimal formatting rounds half to even") {
  CHECK(format_3dp(0.0625) == "0.062");
  CHECK(format_3dp(0.1875) == "0.188");
  CHECK(format_3dp(1.0) == "1.000");
  CHECK(format_3dp(0.0) == "0.000");
  CHECK(format_3dp(9.0 / 23.0) == "0.391");
  CHECK(format_3dp(17.0 / 19.0) == "0.895");
}

TEST_CASE("JSON numbers carry 17 significant digits") {
  Json j = Json::array({0.1, 1.0, 54.0 / 83.0});
  CHECK(dump_json(j, -1) == "[0.10000000000000001,1,0.6506024096385542]");
}

TEST_CASE("evaluation tables") {
  const std::vector<SliceRequest> reqs{ts2(), ts1()};
  EvaluationContext ctx{.bounds = example_bounds()};
  const auto rows = evaluate_rows(reqs, ctx);
  const std::string csv = format_evaluation(rows, TableFormat::Csv);
  CHECK(csv.find("TS_1,OK,,true,2,2,4,1.000,15,1,24,0.391,2,1,20,0.947,0.651") != std::string::npos);
  CHECK(csv.find("TS_2,OK,,true,3,2,4,0.500,12,1,24,0.522,3,1,20,0.895,0.596") != std::string::npos);

  const std::string empty = format_evaluation({}, TableFormat::Csv);
  CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);
  CHECK(parse_json(format_evaluation({}, TableFormat::Json))["rows"].empty());

  const auto ranked = rank_rows(rows);
  CHECK(ranked[0].slice_id == "TS_1");
  const std::string table = format_ranking(ranked, TableFormat::Csv);
  CHECK(table.find("\n1,TS_1,") != std::string::npos);
  CHECK(table.find("\n2,TS_2,") != std::string::npos);
}

TEST_CASE("ranking refuses rows that could not be normalized") {
  auto bad = ts1();
  bad.id = "BAD";
  bad.calendar_slots = 99;
  const std::vector<SliceRequest> reqs{ts1(), bad};
  EvaluationContext ctx{.bounds = example_bounds()};
  try {
    rank_rows(evaluate_rows(reqs, ctx));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.subject() == "BAD");
  }
}
