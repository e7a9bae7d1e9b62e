#include "tnsc/io.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tnsc/error.hpp"

namespace tnsc {

namespace {

[[noreturn]] void invalid(const std::string& element, const std::string& why) {
  throw Error(ErrorCode::ValidationError, element, why);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) invalid(where + "." + key, "missing");
  return *it;
}

const Json* optional_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) invalid(where, "expected a string");
  return v.get<std::string>();
}

std::int64_t as_int(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::trunc(d) == d && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  invalid(where, "expected an integer");
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) invalid(where, "expected a number");
  return v.get<double>();
}

bool as_bool(const Json& v, const std::string& where) {
  if (!v.is_boolean()) invalid(where, "expected true or false");
  return v.get<bool>();
}

const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) invalid(where, "expected an array");
  return v;
}

int as_count(const Json& v, const std::string& where) {
  const std::int64_t n = as_int(v, where);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
    invalid(where, "integer out of range");
  return static_cast<int>(n);
}

void write_number(std::string& out, double value) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(level * indent), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column),
                e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.subject(), e.what());
  }
}

TopologyDescription topology_from_json(const Json& j) {
  TopologyDescription desc;
  const Json& nodes = as_array(field(j, "nodes", "topology"), "topology.nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    desc.nodes.push_back(as_string(nodes[i], "topology.nodes[" + std::to_string(i) + "]"));

  const Json& links = as_array(field(j, "links", "topology"), "topology.links");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string where = "topology.links[" + std::to_string(i) + "]";
    const Json& item = links[i];
    Link link;
    link.id = as_string(field(item, "id", where), where + ".id");
    link.a = as_string(field(item, "a", where), where + ".a");
    link.b = as_string(field(item, "b", where), where + ".b");
    if (const Json* v = optional_field(item, "slot_capacity", where))
      link.slot_capacity = as_count(*v, where + ".slot_capacity");
    if (const Json* v = optional_field(item, "slot_gbps", where))
      link.slot_gbps = as_number(*v, where + ".slot_gbps");
    if (const Json* v = optional_field(item, "cost", where)) link.cost = as_int(*v, where + ".cost");
    if (const Json* v = optional_field(item, "srlgs", where)) {
      for (const Json& tag : as_array(*v, where + ".srlgs")) {
        const std::int64_t t = as_int(tag, where + ".srlgs");
        if (t < 0 || t > std::numeric_limits<std::uint32_t>::max())
          invalid(where + ".srlgs", "SRLG tags are non-negative 32-bit integers");
        link.srlgs.insert(static_cast<std::uint32_t>(t));
      }
    }
    desc.links.push_back(std::move(link));
  }

  if (const Json* devices = optional_field(j, "devices", "topology")) {
    as_array(*devices, "topology.devices");
    for (std::size_t i = 0; i < devices->size(); ++i) {
      const std::string where = "topology.devices[" + std::to_string(i) + "]";
      const Json& item = (*devices)[i];
      DeviceProfile device;
      device.node = as_string(field(item, "node", where), where + ".node");
      const Json& ports = as_array(field(item, "ports", where), where + ".ports");
      for (std::size_t p = 0; p < ports.size(); ++p) {
        const std::string pw = where + ".ports[" + std::to_string(p) + "]";
        PortGroup group;
        group.type = as_string(field(ports[p], "type", pw), pw + ".type");
        group.gbps = as_number(field(ports[p], "gbps", pw), pw + ".gbps");
        group.count = as_count(field(ports[p], "count", pw), pw + ".count");
        device.port_groups.push_back(std::move(group));
      }
      desc.devices.push_back(std::move(device));
    }
  }
  return desc;
}

Json topology_to_json(const NetworkTopology& topology) {
  Json j;
  j["nodes"] = topology.nodes();
  j["links"] = Json::array();
  for (const Link& link : topology.links()) {
    Json item;
    item["id"] = link.id;
    item["a"] = link.a;
    item["b"] = link.b;
    item["slot_capacity"] = link.slot_capacity;
    item["slot_gbps"] = link.slot_gbps;
    item["srlgs"] = link.srlgs;
    item["cost"] = link.cost;
    j["links"].push_back(std::move(item));
  }
  j["devices"] = Json::array();
  for (const DeviceProfile& device : topology.devices()) {
    Json item;
    item["node"] = device.node;
    item["ports"] = Json::array();
    for (const PortGroup& group : device.port_groups)
      item["ports"].push_back({{"type", group.type}, {"gbps", group.gbps}, {"count", group.count}});
    j["devices"].push_back(std::move(item));
  }
  return j;
}

SliceRequest request_from_json(const Json& j) {
  std::string where = "request";
  if (j.is_object() && j.contains("id") && j["id"].is_string())
    where += " " + j["id"].get<std::string>();
  SliceRequest r;
  r.id = as_string(field(j, "id", where), where + ".id");
  r.src = as_string(field(j, "src", where), where + ".src");
  r.dst = as_string(field(j, "dst", where), where + ".dst");
  r.control_required = as_bool(field(j, "control", where), where + ".control");
  r.disjoint_paths = as_count(field(j, "disjoint_paths", where), where + ".disjoint_paths");
  const Json& ports = field(j, "client_ports", where);
  r.port.type = as_string(field(ports, "type", where + ".client_ports"), where + ".client_ports.type");
  r.port.gbps = as_number(field(ports, "gbps", where + ".client_ports"), where + ".client_ports.gbps");
  r.client_ports = as_count(field(ports, "count", where + ".client_ports"), where + ".client_ports.count");
  r.calendar_slots = as_count(field(j, "calendar_slots", where), where + ".calendar_slots");
  if (const Json* w = optional_field(j, "weights", where)) r.weights = weights_from_json(*w);
  return r;
}

Json request_to_json(const SliceRequest& request) {
  Json j;
  j["id"] = request.id;
  j["src"] = request.src;
  j["dst"] = request.dst;
  j["control"] = request.control_required;
  j["disjoint_paths"] = request.disjoint_paths;
  j["client_ports"] = {{"type", request.port.type},
                       {"gbps", request.port.gbps},
                       {"count", request.client_ports}};
  j["calendar_slots"] = request.calendar_slots;
  if (request.weights) j["weights"] = weights_to_json(*request.weights);
  return j;
}

std::vector<SliceRequest> requests_from_json(const Json& j) {
  std::vector<SliceRequest> out;
  for (const Json& item : as_array(j, "requests")) out.push_back(request_from_json(item));
  return out;
}

Weights weights_from_json(const Json& j) {
  if (!j.is_object()) invalid("weights", "expected an object");
  Weights w = kEqualWeights;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Dimension dim = parse_dimension(it.key());
    const double value = as_number(it.value(), "weights." + it.key());
    if (!(value > 0.0)) throw Error(ErrorCode::NonPositiveWeight, it.key());
    w[static_cast<int>(dim)] = value;
  }
  return w;
}

Json weights_to_json(const Weights& weights) {
  Json j = Json::object();
  for (Dimension dim : kDimensions) j[std::string(to_string(dim))] = weights[static_cast<int>(dim)];
  return j;
}

TraitBounds bounds_from_json(const Json& j) {
  TraitBounds bounds;
  const Json* mode = optional_field(j, "mode", "bounds");
  const std::string mode_text = mode ? as_string(*mode, "bounds.mode") : "static";
  if (mode_text == "static") {
    bounds.mode = BoundsMode::Static;
  } else if (mode_text == "derived") {
    bounds.mode = BoundsMode::Derived;
  } else {
    invalid("bounds.mode", "expected static or derived");
  }
  constexpr std::array<std::int64_t, 3> kMinLower = {2, 1, 1};
  for (Dimension dim : kDimensions) {
    const std::string label{to_string(dim)};
    const std::string where = "bounds." + label;
    TraitRange& range = bounds[dim];
    if (bounds.mode == BoundsMode::Static) {
      const Json& item = field(j, label.c_str(), "bounds");
      range.l = as_int(field(item, "l", where), where + ".l");
      range.h = as_int(field(item, "h", where), where + ".h");
    } else {
      range.l = kMinLower[static_cast<int>(dim)];
      range.h = 0;
      if (const Json* item = optional_field(j, label.c_str(), "bounds"))
        if (const Json* l = optional_field(*item, "l", where)) range.l = as_int(*l, where + ".l");
    }
  }
  validate_bounds(bounds);
  return bounds;
}

Json bounds_to_json(const TraitBounds& bounds) {
  Json j;
  j["mode"] = bounds.mode == BoundsMode::Static ? "static" : "derived";
  for (Dimension dim : kDimensions) {
    const TraitRange& range = bounds[dim];
    j[std::string(to_string(dim))] = {{"l", range.l}, {"h", range.h}};
  }
  return j;
}

ReconfigPolicy policy_from_json(const Json& j) {
  ReconfigPolicy policy;
  if (const Json* order = optional_field(j, "order", "policy")) {
    const std::string text = as_string(*order, "policy.order");
    if (text == "descending_index") policy.order = ReconfigOrder::DescendingIndex;
    else if (text == "ascending_index") policy.order = ReconfigOrder::AscendingIndex;
    else invalid("policy.order", "expected descending_index or ascending_index");
  }
  if (const Json* action = optional_field(j, "on_failure", "policy")) {
    const std::string text = as_string(*action, "policy.on_failure");
    if (text == "mark_degraded") policy.on_failure = FailureAction::MarkDegraded;
    else if (text == "drop") policy.on_failure = FailureAction::Drop;
    else invalid("policy.on_failure", "expected mark_degraded or drop");
  }
  return policy;
}

Json policy_to_json(const ReconfigPolicy& policy) {
  return {{"order", to_string(policy.order)}, {"on_failure", to_string(policy.on_failure)}};
}

Json path_to_json(const Path& path) {
  return {{"nodes", path.nodes}, {"links", path.links}, {"cost", path.cost}};
}

Json vector_to_json(const FeasibilityVector& vector) {
  Json j;
  for (const auto& [label, value] : vector.boolean_traits) j[label] = value;
  for (Dimension dim : kDimensions) {
    const TraitValue& t = vector[dim];
    j[std::string(to_string(dim))] = {
        {"r", t.r}, {"l", t.l}, {"h", t.h}, {"value", t.value}, {"value_3dp", format_3dp(t.value)}};
  }
  return j;
}

Json snapshot_to_json(const Snapshot& snapshot) {
  Json j;
  j["links"] = Json::array();
  for (const LinkUsage& link : snapshot.links) {
    j["links"].push_back({{"id", link.link},
                          {"used", link.used},
                          {"capacity", link.capacity},
                          {"state", to_string(link.state)}});
  }
  j["ports"] = Json::array();
  for (const PortUsage& port : snapshot.ports) {
    j["ports"].push_back({{"node", port.node},
                          {"type", port.port.type},
                          {"gbps", port.port.gbps},
                          {"used", port.used},
                          {"capacity", port.capacity}});
  }
  j["slices"] = Json::object();
  for (const auto& [id, state] : snapshot.slices) j["slices"][id] = to_string(state);
  return j;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::string format_3dp(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

}  // namespace tnsc
