#include "cqd/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqd/error.hpp"
#include "cqd/shifts.hpp"

namespace cqd::query {

namespace {

constexpr std::size_t idx(Term t) { return static_cast<std::size_t>(t); }

}  // namespace

CostFunction::CostFunction(const TargetSpec& spec) : target_(resolve(spec)) {
  if (target_.metric == Metric::custom) {
    expression_ = Expression::compile(target_.expression, [](std::string_view name) -> std::optional<std::size_t> {
      if (const auto t = parse_term(name)) return idx(*t);
      constexpr std::string_view suffix = "_target";
      if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
        if (const auto t = parse_term(name.substr(0, name.size() - suffix.size()))) return kTermCount + idx(*t);
      }
      return std::nullopt;
    });
    for (const std::size_t slot : expression_->slots()) {
      if (slot < kTermCount) {
        needed_[slot] = true;
      } else if (!target_.has_value[slot - kTermCount]) {
        throw Error(ErrorCode::invalid_argument,
                    "expression uses " + std::string(to_string(static_cast<Term>(slot - kTermCount))) +
                        "_target but the target has no such value");
      }
    }
  } else {
    for (std::size_t i = 0; i < kTermCount; ++i) {
      if (target_.weight[i] > 0.0) {
        weighted_.push_back(static_cast<Term>(i));
        needed_[i] = true;
      }
    }
  }
}

double CostFunction::operator()(const HamiltonianParams& p) const {
  std::array<double, 2 * kTermCount> v{};
  v[idx(Term::f_q)] = p.f_q;
  v[idx(Term::alpha)] = p.alpha;
  v[idx(Term::f_r)] = p.f_r;
  v[idx(Term::kappa)] = p.kappa;
  v[idx(Term::g)] = p.g;
  v[idx(Term::Delta)] = p.delta();
  if (needed_[idx(Term::chi)] || needed_[idx(Term::chi_L)]) {
    const auto s = physics::perturbative_shifts(p.g, p.f_q, p.f_r, p.alpha);
    v[idx(Term::chi)] = s.chi;
    v[idx(Term::chi_L)] = s.chi_L;
  }

  if (expression_) {
    std::copy(target_.value.begin(), target_.value.end(), v.begin() + kTermCount);
    return expression_->evaluate(v);
  }

  double total = 0.0;
  for (const Term t : weighted_) {
    const std::size_t i = idx(t);
    const double P = target_.value[i];
    const double rel = (P - v[i]) / P;
    const double w = target_.weight[i];
    switch (target_.metric) {
      case Metric::weighted_relative_l2: total += w * rel * rel; break;
      case Metric::l1: total += w * std::abs(rel); break;
      case Metric::chebyshev: total = std::max(total, w * std::abs(rel)); break;
      case Metric::custom: break;
    }
  }
  return total;
}

double cost(const TargetSpec& spec, const HamiltonianParams& candidate) { return CostFunction(spec)(candidate); }

}  // namespace cqd::query
