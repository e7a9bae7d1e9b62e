#ifndef TNSC_FEASIBILITY_HPP
#define TNSC_FEASIBILITY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnsc/model.hpp"

namespace tnsc {

enum class DisjointnessMode;

// 1 - (r - l) / (h - l): lower requested values are more feasible.
// l == h yields 1 for r == l. Throws OutOfRangeError unless l <= r <= h.
double normalize_falling(std::int64_t r, std::int64_t l, std::int64_t h);

// (r - l) / (h - l), the complement of normalize_falling.
double normalize_rising(std::int64_t r, std::int64_t l, std::int64_t h);

struct TraitValue {
  std::int64_t r = 0;
  std::int64_t l = 0;
  std::int64_t h = 0;
  double value = 0.0;

  bool operator==(const TraitValue&) const = default;
};

using BooleanSignature = std::map<std::string, bool>;

struct FeasibilityVector {
  SliceId slice_id;
  BooleanSignature boolean_traits;  // {"control": c}
  std::array<TraitValue, 3> numeric_traits;  // indexed by Dimension

  const TraitValue& operator[](Dimension dim) const {
    return numeric_traits[static_cast<int>(dim)];
  }
  bool operator==(const FeasibilityVector&) const = default;
};

struct FeasibilityIndex {
  double value = 0.0;
  Weights weights_used = kEqualWeights;

  bool operator==(const FeasibilityIndex&) const = default;
};

// Falling-normalizes p, d and s against `bounds`. Range violations are
// rethrown as OutOfRangeError tagged with the dimension label.
FeasibilityVector build_vector(const SliceRequest& request,
                               const TraitBounds& bounds);

// Weighted harmonic mean (sum w) / (sum w / x). Any zero value gives 0.
// Throws Error(NonPositiveWeight); values must lie in [0, inf).
double harmonic_merge(std::span<const double> values,
                      std::span<const double> weights);
// Unweighted n / (sum 1 / x).
double harmonic_merge(std::span<const double> values);

FeasibilityIndex merge_index(const FeasibilityVector& vector,
                             const Weights& weights = kEqualWeights);

// Partition by Boolean trait values; input order is kept inside each group.
std::map<BooleanSignature, std::vector<FeasibilityVector>> group_by_boolean(
    std::span<const FeasibilityVector> vectors);

struct RankedSlice {
  SliceId slice_id;
  FeasibilityVector vector;
  FeasibilityIndex index;
};

// Descending index, ties by ascending slice id. A request's own weights take
// precedence over `weights`. Normalization errors name the request.
std::vector<RankedSlice> rank(std::span<const SliceRequest> requests,
                              const TraitBounds& bounds,
                              const Weights& weights = kEqualWeights);

enum class DimensionOrder { FirstBetter, SecondBetter, Equal };
std::string_view to_string(DimensionOrder order);

// Higher normalized value wins. Throws Error(UnknownDimension).
DimensionOrder compare_dimension(const FeasibilityVector& first,
                                 const FeasibilityVector& second,
                                 std::string_view dimension);

// ---------------------------------------------------------------------------
// Batch evaluation. Rows are independent, so the parallel kernel spreads
// them over OpenMP threads; the serial version is the reference it is tested
// against and must produce identical rows.

enum class RowStatus { Ok, OutOfRange, NoDevice, NoMatchingPorts, Invalid };
std::string_view to_string(RowStatus status);

struct EvaluationRow {
  SliceId slice_id;
  RowStatus status = RowStatus::Ok;
  std::string detail;  // dimension, node or message for non-Ok rows
  SliceRequest request;
  std::optional<TraitBounds> bounds;  // unset when derivation failed
  std::optional<FeasibilityVector> vector;
  std::optional<FeasibilityIndex> index;

  bool operator==(const EvaluationRow&) const = default;
};

struct EvaluationContext {
  TraitBounds bounds;
  // Required for derived bounds; static bounds never consult the network.
  const NetworkTopology* topology = nullptr;
  DisjointnessMode mode{};
  Weights weights = kEqualWeights;
};

EvaluationRow evaluate_request(const SliceRequest& request,
                               const EvaluationContext& context);

std::vector<EvaluationRow> evaluate_rows_serial(
    std::span<const SliceRequest> requests, const EvaluationContext& context);

std::vector<EvaluationRow> evaluate_rows(std::span<const SliceRequest> requests,
                                         const EvaluationContext& context);

}  // namespace tnsc

#endif  // TNSC_FEASIBILITY_HPP
