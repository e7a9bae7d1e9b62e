#include "tnsc/error.hpp"

#include <utility>

namespace tnsc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidCapacity: return "InvalidCapacity";
    case ErrorCode::InvalidDevice: return "InvalidDevice";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NoDevice: return "NoDevice";
    case ErrorCode::NoMatchingPorts: return "NoMatchingPorts";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::UnknownDimension: return "UnknownDimension";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::InsufficientDiversity: return "InsufficientDiversity";
    case ErrorCode::UnknownSlice: return "UnknownSlice";
    case ErrorCode::AlreadyReleased: return "AlreadyReleased";
    case ErrorCode::DuplicateSlice: return "DuplicateSlice";
    case ErrorCode::UnknownLink: return "UnknownLink";
    case ErrorCode::StaleSequence: return "StaleSequence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& subject,
                           const std::string& detail) {
  std::string msg{to_string(code)};
  msg += "(" + subject + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(format_message(code, subject, detail)),
      code_(code),
      subject_(std::move(subject)) {}

OutOfRangeError::OutOfRangeError(std::string dimension, std::int64_t r,
                                 std::int64_t l, std::int64_t h)
    : Error(ErrorCode::OutOfRange, std::move(dimension),
            "r=" + std::to_string(r) + " outside [" + std::to_string(l) + ", " +
                std::to_string(h) + "]"),
      r_(r),
      l_(l),
      h_(h) {}

OutOfRangeError OutOfRangeError::with_dimension(std::string dimension) const {
  return OutOfRangeError(std::move(dimension), r_, l_, h_);
}

InsufficientDiversityError::InsufficientDiversityError(int requested,
                                                       int found,
                                                       bool budget_exhausted)
    : Error(ErrorCode::InsufficientDiversity, "found=" + std::to_string(found),
            "requested " + std::to_string(requested) +
                (budget_exhausted ? " (search budget exhausted)" : "")),
      requested_(requested),
      found_(found),
      budget_exhausted_(budget_exhausted) {}

}  // namespace tnsc
