#ifndef TNSC_IO_HPP
#define TNSC_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnsc/controller.hpp"
#include "tnsc/feasibility.hpp"
#include "tnsc/model.hpp"

namespace tnsc {

using Json = nlohmann::ordered_json;

// Throws Error(ParseError) with "line L, column C" as subject.
Json parse_json(std::string_view text);
// Reads and parses a file; unreadable files are a ParseError too.
Json read_json_file(const std::filesystem::path& path);

// Field-level problems throw Error(ValidationError) naming the element.
TopologyDescription topology_from_json(const Json& j);
Json topology_to_json(const NetworkTopology& topology);

SliceRequest request_from_json(const Json& j);
Json request_to_json(const SliceRequest& request);
std::vector<SliceRequest> requests_from_json(const Json& j);

// Missing dimensions default to 1; unknown keys are UnknownDimension.
Weights weights_from_json(const Json& j);
Json weights_to_json(const Weights& weights);

// Static bounds need l and h per dimension; derived bounds ignore h and
// fall back to the minimum l when it is absent. Runs validate_bounds.
TraitBounds bounds_from_json(const Json& j);
Json bounds_to_json(const TraitBounds& bounds);

ReconfigPolicy policy_from_json(const Json& j);
Json policy_to_json(const ReconfigPolicy& policy);

Json path_to_json(const Path& path);
Json vector_to_json(const FeasibilityVector& vector);
Json snapshot_to_json(const Snapshot& snapshot);

// Serializes with every floating-point number written to 17 significant
// digits, locale-independent. indent < 0 gives the compact form.
std::string dump_json(const Json& j, int indent = 2);

// Fixed three-decimal rendering, round-half-to-even on the exact binary value.
std::string format_3dp(double value);

}  // namespace tnsc

#endif  // TNSC_IO_HPP
