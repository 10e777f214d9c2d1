#pragma once

#include <array>
#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "cqd/types.hpp"

namespace cqd::query {

enum class Term : std::size_t { f_q, alpha, f_r, kappa, g, Delta, chi, chi_L };
inline constexpr std::size_t kTermCount = 8;
inline constexpr std::size_t kBaseTermCount = 5;

std::string_view to_string(Term t) noexcept;
std::optional<Term> parse_term(std::string_view name) noexcept;
constexpr bool is_derived(Term t) { return static_cast<std::size_t>(t) >= kBaseTermCount; }

// Value of one term for a parameter set. Derived shifts use the perturbative
// formulas and throw on degenerate detunings. kappa in MHz, the rest in GHz.
double term_value(const HamiltonianParams& p, Term t);

enum class Metric { weighted_relative_l2, l1, chebyshev, custom };

std::string_view to_string(Metric m) noexcept;
Metric parse_metric(std::string_view text);

struct TargetSpec {
  // Target values of the five base quantities.
  std::array<std::optional<double>, kBaseTermCount> values{};
  // Weights for every term. Unset means 1 for a present base value and 0 for
  // a derived term not listed in `derived`.
  std::array<std::optional<double>, kTermCount> weights{};
  // Derived terms to include in the cost.
  std::array<bool, kTermCount> derived{};
  Metric metric = Metric::weighted_relative_l2;
  std::string expression;  // custom metric only

  std::optional<double>& value(Term t) { return values[static_cast<std::size_t>(t)]; }
  const std::optional<double>& value(Term t) const { return values[static_cast<std::size_t>(t)]; }
  void set_weight(Term t, double w) { weights[static_cast<std::size_t>(t)] = w; }

  bool complete() const;
  // Target parameters; requires complete().
  HamiltonianParams params() const;
};

// "f_q=4.2,alpha=-0.2,..." in GHz (kappa in MHz). Throws Error(parse).
TargetSpec parse_target(std::string_view text);
// "f_r=2,chi=1". Listing a derived term enables it. Throws Error(parse).
void parse_weights(std::string_view text, TargetSpec& spec);

// Mapping form {"f_q": 4.2, ..., "weights": {"f_r": 2}, "derived": ["chi"],
// "metric": "l1", "expression": "..."}. Unknown keys throw Error(parse).
TargetSpec target_from_mapping(const nlohmann::json& j);
nlohmann::json to_json(const TargetSpec& spec);

// Target with derived values filled in and weights resolved.
struct ResolvedTarget {
  std::array<double, kTermCount> value{};
  std::array<double, kTermCount> weight{};
  std::array<bool, kTermCount> has_value{};
  Metric metric = Metric::weighted_relative_l2;
  std::string expression;
};

// Checks the target invariants (finite values, alpha < 0, non-negative
// weights, one positive weight, nonzero targets under relative metrics) and
// computes the derived target values from the base ones.
// Throws Error(invalid_argument).
ResolvedTarget resolve(const TargetSpec& spec);

}  // namespace cqd::query
