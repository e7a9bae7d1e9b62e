#include <cstddef>
#include <exception>

#include "tnsc/error.hpp"
#include "tnsc/feasibility.hpp"
#include "tnsc/pathfind.hpp"

namespace tnsc {

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Ok: return "OK";
    case RowStatus::OutOfRange: return "OUT_OF_RANGE";
    case RowStatus::NoDevice: return "NO_DEVICE";
    case RowStatus::NoMatchingPorts: return "NO_MATCHING_PORTS";
    case RowStatus::Invalid: return "INVALID";
  }
  return "INVALID";
}

// Never throws: every failure becomes the row's status.
EvaluationRow evaluate_request(const SliceRequest& request,
                               const EvaluationContext& context) {
  EvaluationRow row;
  row.slice_id = request.id;
  row.request = request;
  try {
    const bool derived = context.bounds.mode == BoundsMode::Derived;
    if (derived && context.topology == nullptr)
      throw Error(ErrorCode::ValidationError, request.id,
                  "derived bounds need a topology");
    validate_request(request, derived ? context.topology : nullptr);
    row.bounds = derived ? derive_bounds(*context.topology, request,
                                         context.mode, context.bounds)
                         : context.bounds;
    row.vector = build_vector(request, *row.bounds);
    row.index = merge_index(*row.vector, request.weights.value_or(context.weights));
  } catch (const OutOfRangeError& e) {
    row.status = RowStatus::OutOfRange;
    row.detail = e.dimension();
  } catch (const Error& e) {
    row.status = e.code() == ErrorCode::NoDevice          ? RowStatus::NoDevice
                 : e.code() == ErrorCode::NoMatchingPorts ? RowStatus::NoMatchingPorts
                                                          : RowStatus::Invalid;
    row.detail = row.status == RowStatus::Invalid ? e.what() : e.subject();
  } catch (const std::exception& e) {
    row.status = RowStatus::Invalid;
    row.detail = e.what();
  }
  if (row.status != RowStatus::Ok) {
    row.vector.reset();
    row.index.reset();
  }
  return row;
}

std::vector<EvaluationRow> evaluate_rows_serial(
    std::span<const SliceRequest> requests, const EvaluationContext& context) {
  std::vector<EvaluationRow> rows;
  rows.reserve(requests.size());
  for (const auto& request : requests) rows.push_back(evaluate_request(request, context));
  return rows;
}

std::vector<EvaluationRow> evaluate_rows(std::span<const SliceRequest> requests,
                                         const EvaluationContext& context) {
  const auto n = static_cast<std::ptrdiff_t>(requests.size());
  std::vector<EvaluationRow> rows(requests.size());
  // Derived rows run a max-flow each, so row cost varies with the endpoints.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = evaluate_request(requests[i], context);
  return rows;
}

}  // namespace tnsc
