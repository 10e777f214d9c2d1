#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqd {

enum class ErrorCode {
  invalid_argument,
  degenerate_detuning,
  resonant_denominator,
  no_convergence,
  labeling_ambiguity,
  cutoff_not_converged,
  degenerate_data,
  io,
  schema,
  duplicate_id,
  empty_store,
  infeasible_target,
  parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a stable code so callers
// (CLI exit codes, foreign bindings) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cqd
