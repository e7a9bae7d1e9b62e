#ifndef TNSC_ERROR_HPP
#define TNSC_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tnsc {

enum class ErrorCode {
  DanglingEndpoint,
  DuplicateId,
  InvalidCapacity,
  InvalidDevice,
  InvalidRequest,
  InvalidBounds,
  UnknownNode,
  NoDevice,
  NoMatchingPorts,
  OutOfRange,
  NonPositiveWeight,
  UnknownDimension,
  Unreachable,
  InsufficientDiversity,
  UnknownSlice,
  AlreadyReleased,
  DuplicateSlice,
  UnknownLink,
  StaleSequence,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `subject()` names the offending
// element (node, link, slice, dimension or file position).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

class OutOfRangeError : public Error {
 public:
  OutOfRangeError(std::string dimension, std::int64_t r, std::int64_t l,
                  std::int64_t h);

  const std::string& dimension() const noexcept { return subject(); }
  std::int64_t requested() const noexcept { return r_; }
  std::int64_t lower() const noexcept { return l_; }
  std::int64_t upper() const noexcept { return h_; }

  // Same range violation, re-tagged with the dimension it was found in.
  OutOfRangeError with_dimension(std::string dimension) const;

 private:
  std::int64_t r_, l_, h_;
};

class InsufficientDiversityError : public Error {
 public:
  InsufficientDiversityError(int requested, int found, bool budget_exhausted);

  int requested() const noexcept { return requested_; }
  int found() const noexcept { return found_; }
  // Set when the SRLG search stopped on its expansion budget, so `found`
  // is a lower bound rather than the true maximum.
  bool budget_exhausted() const noexcept { return budget_exhausted_; }

 private:
  int requested_, found_;
  bool budget_exhausted_;
};

}  // namespace tnsc

#endif  // TNSC_ERROR_HPP
