#include "conehull/errors.hpp"

namespace conehull {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::UnboundedRegion: return "unbounded region";
    case ErrorKind::IrrationalInput: return "irrational input";
    case ErrorKind::RationalSpec: return "rational spec";
    case ErrorKind::NotInSemigroup: return "not in semigroup";
    case ErrorKind::TruncationExceeded: return "truncation radius exceeded";
    case ErrorKind::EscapedDirection: return "escaped direction";
    case ErrorKind::WindowMismatch: return "mismatched windows";
    case ErrorKind::NotHermitian: return "non-hermitian input";
    case ErrorKind::NotProjection: return "non-projection input";
    case ErrorKind::NotUnitary: return "non-unitary input";
    case ErrorKind::IntervalViolation: return "Chebyshev interval violation";
    case ErrorKind::GapClosure: return "gap closure";
    case ErrorKind::NotLocalized: return "not localized";
    case ErrorKind::UnknownModel: return "unknown model";
    case ErrorKind::ResourceLimit: return "resource bound exceeded";
  }
  return "unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotProjection:
    case ErrorKind::NotUnitary:
    case ErrorKind::IntervalViolation:
    case ErrorKind::GapClosure:
    case ErrorKind::NotLocalized:
    case ErrorKind::EscapedDirection:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace conehull
