#pragma once

#include <stdexcept>
#include <string>

namespace mg {

enum class ErrorCode {
  parse_error = 1,
  invalid_input,
  invalid_basis,
  not_comparable,
  crossing_violation,
  path_cap_exceeded,
  state_budget_exceeded,
  degree_explosion,
  invariant_breach,
  unknown_command,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Validation failures map to exit status 1, broken invariants to 2.
inline bool is_validation_error(ErrorCode code) {
  return code == ErrorCode::parse_error || code == ErrorCode::invalid_input ||
         code == ErrorCode::invalid_basis || code == ErrorCode::not_comparable ||
         code == ErrorCode::unknown_command;
}

}  // namespace mg
