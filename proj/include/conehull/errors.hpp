#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conehull {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  UnboundedRegion,
  IrrationalInput,
  RationalSpec,
  NotInSemigroup,
  TruncationExceeded,
  EscapedDirection,
  WindowMismatch,
  NotHermitian,
  NotProjection,
  NotUnitary,
  IntervalViolation,
  GapClosure,
  NotLocalized,
  UnknownModel,
  ResourceLimit,
};

std::string_view to_string(ErrorKind kind);

// Numerical failures (as opposed to bad input) map to a distinct CLI exit code.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace conehull
