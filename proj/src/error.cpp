#include "morsegraded/error.hpp"

namespace mg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::invalid_basis: return "InvalidBasis";
    case ErrorCode::not_comparable: return "NotComparable";
    case ErrorCode::crossing_violation: return "CrossingViolation";
    case ErrorCode::path_cap_exceeded: return "PathCapExceeded";
    case ErrorCode::state_budget_exceeded: return "CollectionEnumerationOverflow";
    case ErrorCode::degree_explosion: return "DegreeExplosion";
    case ErrorCode::invariant_breach: return "InvariantBreach";
    case ErrorCode::unknown_command: return "UnknownCommand";
  }
  return "Unknown";
}

}  // namespace mg
