#include "tnsc/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "tnsc/error.hpp"

namespace tnsc {

namespace {

[[noreturn]] void invalid(const std::string& element, const std::string& why) {
  throw Error(ErrorCode::ValidationError, element, why);
}

// Load-time failures all surface as ValidationError naming the element.
template <typename Fn>
auto validating(const std::string& element, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError) throw;
    invalid(element, e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) invalid(std::string("scenario.") + key, "missing");
  return *it;
}

std::string text_of(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) invalid(where + "." + key, "expected a string");
  return it->get<std::string>();
}

Json optional_string(const std::optional<std::string>& value) {
  return value && !value->empty() ? Json(*value) : Json(nullptr);
}

Json paths_json(const std::vector<Path>& paths) {
  Json out = Json::array();
  for (const Path& path : paths) out.push_back(path_to_json(path));
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Json row_json(const EvaluationRow& row) {
  Json j;
  j["id"] = row.slice_id;
  j["status"] = to_string(row.status);
  j["detail"] = row.detail.empty() ? Json(nullptr) : Json(row.detail);
  j["control"] = row.request.control_required;
  Json traits = Json::object();
  for (Dimension dim : kDimensions) {
    Json t;
    t["r"] = row.request.trait(dim);
    t["l"] = row.bounds ? Json((*row.bounds)[dim].l) : Json(nullptr);
    t["h"] = row.bounds ? Json((*row.bounds)[dim].h) : Json(nullptr);
    t["value"] = row.vector ? Json((*row.vector)[dim].value) : Json(nullptr);
    t["value_3dp"] = row.vector ? Json(format_3dp((*row.vector)[dim].value)) : Json(nullptr);
    traits[std::string(to_string(dim))] = std::move(t);
  }
  j["traits"] = std::move(traits);
  j["index"] = row.index ? Json(row.index->value) : Json(nullptr);
  j["index_3dp"] = row.index ? Json(format_3dp(row.index->value)) : Json(nullptr);
  j["weights"] = row.index ? weights_to_json(row.index->weights_used) : Json(nullptr);
  return j;
}

std::string csv_header() {
  std::string header = "id,status,detail,control";
  for (Dimension dim : kDimensions) {
    const std::string label{to_string(dim)};
    header += "," + label + "_r," + label + "_l," + label + "_h," + label;
  }
  return header + ",index";
}

std::string csv_row(const EvaluationRow& row) {
  std::string line = csv_field(row.slice_id) + "," + std::string(to_string(row.status)) + "," +
                     csv_field(row.detail) + "," +
                     (row.request.control_required ? "true" : "false");
  for (Dimension dim : kDimensions) {
    line += "," + std::to_string(row.request.trait(dim));
    line += "," + (row.bounds ? std::to_string((*row.bounds)[dim].l) : std::string());
    line += "," + (row.bounds ? std::to_string((*row.bounds)[dim].h) : std::string());
    line += "," + (row.vector ? format_3dp((*row.vector)[dim].value) : std::string());
  }
  line += "," + (row.index ? format_3dp(row.index->value) : std::string());
  return line;
}

ErrorCode code_for(RowStatus status) {
  switch (status) {
    case RowStatus::OutOfRange: return ErrorCode::OutOfRange;
    case RowStatus::NoDevice: return ErrorCode::NoDevice;
    case RowStatus::NoMatchingPorts: return ErrorCode::NoMatchingPorts;
    default: return ErrorCode::ValidationError;
  }
}

}  // namespace

ControllerConfig Scenario::controller_config() const {
  ControllerConfig config;
  config.bounds = bounds;
  config.mode = mode;
  config.policy = policy;
  config.weights = weights;
  config.control_context_cap = control_context_cap;
  config.srlg_budget = srlg_budget;
  return config;
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) invalid("scenario", "expected an object");

  NetworkTopology topology = validating("topology", [&] {
    return validate_topology(topology_from_json(member(j, "topology")));
  });
  Scenario scenario{std::move(topology), {}, {}, {}, kEqualWeights, {}, 1000, {}};
  scenario.bounds = validating("bounds", [&] { return bounds_from_json(member(j, "bounds")); });
  if (j.contains("mode"))
    scenario.mode = validating("mode", [&] { return parse_mode(text_of(j, "mode", "scenario")); });
  if (j.contains("policy"))
    scenario.policy = validating("policy", [&] { return policy_from_json(j["policy"]); });
  if (j.contains("weights"))
    scenario.weights = validating("weights", [&] { return weights_from_json(j["weights"]); });
  if (j.contains("control_context_cap")) {
    const Json& cap = j["control_context_cap"];
    if (!cap.is_number_unsigned()) invalid("scenario.control_context_cap", "expected a count");
    scenario.control_context_cap = cap.get<std::size_t>();
  }
  if (j.contains("srlg_budget")) {
    const Json& budget = j["srlg_budget"];
    if (!budget.is_number_unsigned()) invalid("scenario.srlg_budget", "expected a count");
    scenario.srlg_budget = budget.get<std::size_t>();
  }

  const Json& events = member(j, "events");
  if (!events.is_array()) invalid("scenario.events", "expected an array");
  std::set<SliceId> requested;
  std::optional<std::uint64_t> last;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = "events[" + std::to_string(i) + "]";
    const Json& item = events[i];
    if (!item.is_object()) invalid(where, "expected an object");
    if (!item.contains("seq") || !item["seq"].is_number_unsigned())
      invalid(where + ".seq", "expected a non-negative integer");
    Event event;
    event.seq = item["seq"].get<std::uint64_t>();
    if (last && event.seq <= *last) invalid(where + ".seq", "seq must strictly increase");
    last = event.seq;

    const std::string type = text_of(item, "type", where);
    if (type == "request_arrival") {
      if (!item.contains("request")) invalid(where + ".request", "missing");
      SliceRequest request = validating(where, [&] {
        SliceRequest r = request_from_json(item["request"]);
        validate_request(r, &scenario.topology);
        return r;
      });
      requested.insert(request.id);
      event.kind = RequestArrival{std::move(request)};
    } else if (type == "request_release") {
      const SliceId slice = text_of(item, "slice", where);
      if (!requested.contains(slice)) invalid(slice, "released before any arrival");
      event.kind = RequestRelease{slice};
    } else if (type == "link_down" || type == "link_up") {
      const LinkId link = text_of(item, "link", where);
      if (scenario.topology.find_link(link) == nullptr) invalid(link, "unknown link in " + where);
      if (type == "link_down") event.kind = LinkDown{link};
      else event.kind = LinkUp{link};
    } else {
      invalid(where + ".type", "unknown event type " + type);
    }
    scenario.events.push_back(std::move(event));
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path));
}

Json scenario_to_json(const Scenario& scenario) {
  Json j;
  j["topology"] = topology_to_json(scenario.topology);
  j["bounds"] = bounds_to_json(scenario.bounds);
  j["mode"] = to_string(scenario.mode);
  j["policy"] = policy_to_json(scenario.policy);
  j["weights"] = weights_to_json(scenario.weights);
  if (scenario.control_context_cap) j["control_context_cap"] = *scenario.control_context_cap;
  j["srlg_budget"] = scenario.srlg_budget;
  j["events"] = Json::array();
  for (const Event& event : scenario.events) {
    Json item;
    item["seq"] = event.seq;
    item["type"] = event_name(event);
    if (const auto* a = std::get_if<RequestArrival>(&event.kind)) item["request"] = request_to_json(a->request);
    if (const auto* r = std::get_if<RequestRelease>(&event.kind)) item["slice"] = r->slice;
    if (const auto* d = std::get_if<LinkDown>(&event.kind)) item["link"] = d->link;
    if (const auto* u = std::get_if<LinkUp>(&event.kind)) item["link"] = u->link;
    j["events"].push_back(std::move(item));
  }
  return j;
}

ScenarioReport run_scenario(const Scenario& scenario) {
  Controller controller(scenario.topology, scenario.controller_config());
  ScenarioReport report;

  for (const Event& event : scenario.events) {
    ReportEntry entry;
    entry.seq = event.seq;
    entry.event = std::string(event_name(event));
    if (const auto* a = std::get_if<RequestArrival>(&event.kind)) {
      entry.action = "admit";
      entry.slice = a->request.id;
    } else if (const auto* r = std::get_if<RequestRelease>(&event.kind)) {
      entry.action = "release";
      entry.slice = r->slice;
    } else if (const auto* d = std::get_if<LinkDown>(&event.kind)) {
      entry.action = "link_down";
      entry.link = d->link;
    } else if (const auto* u = std::get_if<LinkUp>(&event.kind)) {
      entry.action = "link_up";
      entry.link = u->link;
    }

    std::vector<SliceId> affected;
    try {
      affected = controller.apply_event(event);
    } catch (const Error& e) {
      entry.outcome = "error";
      entry.reason = std::string(to_string(e.code()));
      entry.reason_detail = e.subject();
      report.entries.push_back(std::move(entry));
      continue;
    }

    if (entry.action == "admit") {
      const SliceEntry& slice = *controller.find_slice(*entry.slice);
      entry.vector = slice.vector;
      entry.index = slice.index;
      entry.paths = slice.record.paths;
      if (slice.record.state == SliceState::Active) {
        entry.outcome = "admitted";
      } else {
        entry.outcome = "rejected";
        entry.reason = std::string(to_string(*slice.record.rejection_reason));
        entry.reason_detail = slice.record.reason_detail;
      }
    } else if (entry.action == "release") {
      entry.outcome = "released";
    } else {
      entry.outcome = "ok";
      entry.affected = affected;
    }
    report.entries.push_back(std::move(entry));

    if (std::holds_alternative<LinkDown>(event.kind) && !affected.empty()) {
      const ReconfigReport reconfig = controller.reconfigure(affected, scenario.policy);
      for (const ReconfigEntry& line : reconfig.entries) {
        ReportEntry sub;
        sub.seq = event.seq;
        sub.event = std::string(event_name(event));
        sub.action = "reconfigure";
        sub.slice = line.slice_id;
        sub.vector = line.vector;
        sub.index = line.index;
        sub.outcome = std::string(to_string(line.outcome));
        if (line.reason) sub.reason = std::string(to_string(*line.reason));
        if (line.reason) sub.reason_detail = line.reason_detail;
        sub.old_paths = line.old_paths;
        sub.paths = line.new_paths;
        report.entries.push_back(std::move(sub));
      }
    }
  }
  report.snapshot = controller.snapshot();
  return report;
}

Json report_to_json(const ScenarioReport& report) {
  Json j;
  j["entries"] = Json::array();
  for (const ReportEntry& entry : report.entries) {
    Json item;
    item["seq"] = entry.seq;
    item["event"] = entry.event;
    item["action"] = entry.action;
    item["slice"] = optional_string(entry.slice);
    item["link"] = optional_string(entry.link);
    item["outcome"] = entry.outcome;
    item["reason"] = optional_string(entry.reason);
    item["reason_detail"] = optional_string(entry.reason_detail);
    item["vector"] = entry.vector ? vector_to_json(*entry.vector) : Json(nullptr);
    item["index"] = entry.index ? Json(entry.index->value) : Json(nullptr);
    item["index_3dp"] = entry.index ? Json(format_3dp(entry.index->value)) : Json(nullptr);
    item["old_paths"] = paths_json(entry.old_paths);
    item["paths"] = paths_json(entry.paths);
    item["affected"] = entry.affected;
    j["entries"].push_back(std::move(item));
  }
  j["snapshot"] = snapshot_to_json(report.snapshot);
  return j;
}

std::string format_evaluation(std::span<const EvaluationRow> rows, TableFormat format) {
  if (format == TableFormat::Json) {
    Json j;
    j["rows"] = Json::array();
    for (const EvaluationRow& row : rows) j["rows"].push_back(row_json(row));
    return dump_json(j) + "\n";
  }
  std::string out = csv_header() + "\n";
  for (const EvaluationRow& row : rows) out += csv_row(row) + "\n";
  return out;
}

std::vector<EvaluationRow> rank_rows(std::vector<EvaluationRow> rows) {
  for (const EvaluationRow& row : rows) {
    if (row.status != RowStatus::Ok)
      throw Error(code_for(row.status), row.slice_id,
                  std::string(to_string(row.status)) +
                      (row.detail.empty() ? "" : " " + row.detail));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const EvaluationRow& x, const EvaluationRow& y) {
    if (x.index->value != y.index->value) return x.index->value > y.index->value;
    return x.slice_id < y.slice_id;
  });
  return rows;
}

std::string format_ranking(std::span<const EvaluationRow> rows, TableFormat format) {
  if (format == TableFormat::Json) {
    Json j;
    j["ranking"] = Json::array();
    std::size_t position = 0;
    for (const EvaluationRow& row : rows) {
      Json item;
      item["rank"] = ++position;
      const Json fields = row_json(row);
      for (auto it = fields.begin(); it != fields.end(); ++it) item[it.key()] = it.value();
      j["ranking"].push_back(std::move(item));
    }
    return dump_json(j) + "\n";
  }
  std::string out = "rank," + csv_header() + "\n";
  std::size_t position = 0;
  for (const EvaluationRow& row : rows) out += std::to_string(++position) + "," + csv_row(row) + "\n";
  return out;
}

}  // namespace tnsc
