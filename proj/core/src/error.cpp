#include "cqd/error.hpp"

namespace cqd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_detuning: return "degenerate_detuning";
    case ErrorCode::resonant_denominator: return "resonant_denominator";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::labeling_ambiguity: return "labeling_ambiguity";
    case ErrorCode::cutoff_not_converged: return "cutoff_not_converged";
    case ErrorCode::degenerate_data: return "degenerate_data";
    case ErrorCode::io: return "io";
    case ErrorCode::schema: return "schema";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::empty_store: return "empty_store";
    case ErrorCode::infeasible_target: return "infeasible_target";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

}  // namespace cqd
