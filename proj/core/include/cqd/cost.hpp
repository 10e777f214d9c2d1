#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cqd/expression.hpp"
#include "cqd/target.hpp"

namespace cqd::query {

// Cost of a candidate against a target. Built once per query; evaluation is
// pure and thread-safe.
//   weighted_relative_l2: sum w (P - p)^2 / P^2
//   l1:                   sum w |P - p| / |P|
//   chebyshev:            max w |P - p| / |P|
//   custom:               user expression over candidate terms (f_q, ...,
//                         chi_L) and target values (f_q_target, ...)
// Derived candidate terms (Delta, chi, chi_L) come from the candidate's own
// parameters.
class CostFunction {
 public:
  explicit CostFunction(const TargetSpec& spec);

  // Throws Error(degenerate_detuning) when a needed chi term is singular.
  double operator()(const HamiltonianParams& candidate) const;

  const ResolvedTarget& target() const { return target_; }
  // Terms with a positive weight, in Term order.
  const std::vector<Term>& weighted_terms() const { return weighted_; }

 private:
  ResolvedTarget target_;
  std::vector<Term> weighted_;
  std::array<bool, kTermCount> needed_{};
  std::optional<Expression> expression_;
};

double cost(const TargetSpec& spec, const HamiltonianParams& candidate);

}  // namespace cqd::query
