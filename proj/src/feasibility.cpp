#include "tnsc/feasibility.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tnsc/error.hpp"

namespace tnsc {

double normalize_falling(std::int64_t r, std::int64_t l, std::int64_t h) {
  if (l > h || r < l || r > h) throw OutOfRangeError("value", r, l, h);
  if (l == h) return 1.0;
  return 1.0 - static_cast<double>(r - l) / static_cast<double>(h - l);
}

double normalize_rising(std::int64_t r, std::int64_t l, std::int64_t h) {
  if (l > h || r < l || r > h) throw OutOfRangeError("value", r, l, h);
  if (l == h) return 1.0;
  return static_cast<double>(r - l) / static_cast<double>(h - l);
}

FeasibilityVector build_vector(const SliceRequest& request,
                               const TraitBounds& bounds) {
  FeasibilityVector vector;
  vector.slice_id = request.id;
  vector.boolean_traits["control"] = request.control_required;
  for (Dimension dim : kDimensions) {
    const TraitRange& range = bounds[dim];
    TraitValue& trait = vector.numeric_traits[static_cast<int>(dim)];
    trait.r = request.trait(dim);
    trait.l = range.l;
    trait.h = range.h;
    try {
      trait.value = normalize_falling(trait.r, trait.l, trait.h);
    } catch (const OutOfRangeError& e) {
      throw e.with_dimension(std::string(to_string(dim)));
    }
  }
  return vector;
}

double harmonic_merge(std::span<const double> values,
                      std::span<const double> weights) {
  if (values.empty()) throw std::invalid_argument("harmonic_merge of nothing");
  if (values.size() != weights.size())
    throw std::invalid_argument("one weight per value required");

  double top_weight = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveWeight, std::to_string(w));
    top_weight = std::max(top_weight, w);
  }

  // Terms are summed in sorted order so the result does not depend on the
  // order of the inputs. Weights are rescaled by their maximum, which makes
  // any all-equal weighting reduce to exactly n / sum(1 / x).
  std::vector<std::pair<double, double>> terms;
  terms.reserve(values.size());
  double lo = values[0], hi = values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = values[i];
    if (!(x >= 0.0)) throw std::invalid_argument("harmonic_merge needs x >= 0");
    if (x == 0.0) return 0.0;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    terms.emplace_back(x, weights[i] / top_weight);
  }
  std::sort(terms.begin(), terms.end());

  double weight_sum = 0.0;
  double reciprocal_sum = 0.0;
  for (const auto& [x, w] : terms) {
    weight_sum += w;
    reciprocal_sum += w / x;
  }
  return std::clamp(weight_sum / reciprocal_sum, lo, hi);
}

double harmonic_merge(std::span<const double> values) {
  const std::vector<double> ones(values.size(), 1.0);
  return harmonic_merge(values, ones);
}

FeasibilityIndex merge_index(const FeasibilityVector& vector,
                             const Weights& weights) {
  std::array<double, 3> values{};
  for (Dimension dim : kDimensions)
    values[static_cast<int>(dim)] = vector[dim].value;
  return {harmonic_merge(values, weights), weights};
}

std::map<BooleanSignature, std::vector<FeasibilityVector>> group_by_boolean(
    std::span<const FeasibilityVector> vectors) {
  std::map<BooleanSignature, std::vector<FeasibilityVector>> groups;
  for (const auto& vector : vectors) groups[vector.boolean_traits].push_back(vector);
  return groups;
}

std::vector<RankedSlice> rank(std::span<const SliceRequest> requests,
                              const TraitBounds& bounds, const Weights& weights) {
  std::vector<RankedSlice> ranked;
  ranked.reserve(requests.size());
  for (const auto& request : requests) {
    FeasibilityVector vector;
    try {
      vector = build_vector(request, bounds);
    } catch (const Error& e) {
      throw Error(e.code(), request.id, e.what());
    }
    FeasibilityIndex index = merge_index(vector, request.weights.value_or(weights));
    ranked.push_back({request.id, std::move(vector), index});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedSlice& x, const RankedSlice& y) {
              if (x.index.value != y.index.value) return x.index.value > y.index.value;
              return x.slice_id < y.slice_id;
            });
  return ranked;
}

std::string_view to_string(DimensionOrder order) {
  switch (order) {
    case DimensionOrder::FirstBetter: return "first-better";
    case DimensionOrder::SecondBetter: return "second-better";
    case DimensionOrder::Equal: return "equal";
  }
  return "unknown";
}

DimensionOrder compare_dimension(const FeasibilityVector& first,
                                 const FeasibilityVector& second,
                                 std::string_view dimension) {
  const Dimension dim = parse_dimension(dimension);
  const double a = first[dim].value;
  const double b = second[dim].value;
  if (a > b) return DimensionOrder::FirstBetter;
  if (b > a) return DimensionOrder::SecondBetter;
  return DimensionOrder::Equal;
}

}  // namespace tnsc
