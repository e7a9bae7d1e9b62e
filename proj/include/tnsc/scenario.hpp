#ifndef TNSC_SCENARIO_HPP
#define TNSC_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnsc/controller.hpp"
#include "tnsc/feasibility.hpp"
#include "tnsc/io.hpp"
#include "tnsc/model.hpp"
#include "tnsc/pathfind.hpp"

namespace tnsc {

struct Scenario {
  NetworkTopology topology;
  TraitBounds bounds;
  DisjointnessMode mode = DisjointnessMode::LinkDisjoint;
  ReconfigPolicy policy;
  Weights weights = kEqualWeights;
  std::optional<std::size_t> control_context_cap;
  std::size_t srlg_budget = 1000;
  std::vector<Event> events;  // strictly increasing seq

  ControllerConfig controller_config() const;
};

// Throws Error(ParseError) for malformed JSON and Error(ValidationError) for
// anything structurally wrong, including events that reference unknown
// links or slices never requested earlier in the scenario.
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::filesystem::path& path);
Json scenario_to_json(const Scenario& scenario);

struct ReportEntry {
  std::uint64_t seq = 0;
  std::string event;   // event kind that produced the entry
  std::string action;  // admit, release, link_down, link_up, reconfigure
  std::optional<SliceId> slice;
  std::optional<LinkId> link;
  std::optional<FeasibilityVector> vector;
  std::optional<FeasibilityIndex> index;
  std::string outcome;
  std::optional<std::string> reason;
  std::optional<std::string> reason_detail;
  std::vector<Path> old_paths;
  std::vector<Path> paths;
  std::vector<SliceId> affected;
};

struct ScenarioReport {
  std::vector<ReportEntry> entries;
  Snapshot snapshot;
};

// Events run in order through a fresh controller; a link_down triggers
// reconfiguration of the slices it affects, each appended as its own entry
// under the same seq. Per-event failures become "error" outcomes.
ScenarioReport run_scenario(const Scenario& scenario);

Json report_to_json(const ScenarioReport& report);

enum class TableFormat { Json, Csv };

// One row per request: raw traits, bounds, normalized values and index.
std::string format_evaluation(std::span<const EvaluationRow> rows, TableFormat format);

// Rows sorted by descending index then slice id, with their 1-based rank.
// Throws Error naming the first request that could not be normalized.
std::vector<EvaluationRow> rank_rows(std::vector<EvaluationRow> rows);
std::string format_ranking(std::span<const EvaluationRow> rows, TableFormat format);

}  // namespace tnsc

#endif  // TNSC_SCENARIO_HPP
