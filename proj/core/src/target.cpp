#include "cqd/target.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "cqd/error.hpp"
#include "cqd/shifts.hpp"

namespace cqd::query {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kTermCount> kTermNames = {"f_q", "alpha", "f_r", "kappa",
                                                                 "g",   "Delta", "chi", "chi_L"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::parse, "bad number '" + std::string(text) + "' for '" + std::string(key) + "'");
  }
  return v;
}

template <typename F>
void for_each_pair(std::string_view text, F&& f) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::parse, "expected key=value, got '" + std::string(item) + "'");
      f(trim(item.substr(0, eq)), item.substr(eq + 1));
    } else if (comma != std::string_view::npos || pos < text.size()) {
      throw Error(ErrorCode::parse, "empty item in '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
}

Term require_term(std::string_view name) {
  const auto t = parse_term(name);
  if (!t) throw Error(ErrorCode::parse, "unknown term '" + std::string(name) + "'");
  return *t;
}

}  // namespace

std::string_view to_string(Term t) noexcept { return kTermNames[static_cast<std::size_t>(t)]; }

std::optional<Term> parse_term(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kTermCount; ++i) {
    if (kTermNames[i] == name) return static_cast<Term>(i);
  }
  return std::nullopt;
}

double term_value(const HamiltonianParams& p, Term t) {
  switch (t) {
    case Term::f_q: return p.f_q;
    case Term::alpha: return p.alpha;
    case Term::f_r: return p.f_r;
    case Term::kappa: return p.kappa;
    case Term::g: return p.g;
    case Term::Delta: return p.delta();
    case Term::chi: return physics::perturbative_shifts(p.g, p.f_q, p.f_r, p.alpha).chi;
    case Term::chi_L: return physics::perturbative_shifts(p.g, p.f_q, p.f_r, p.alpha).chi_L;
  }
  return 0.0;
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::weighted_relative_l2: return "weighted_relative_l2";
    case Metric::l1: return "l1";
    case Metric::chebyshev: return "chebyshev";
    case Metric::custom: return "custom";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "weighted_relative_l2" || text == "l2") return Metric::weighted_relative_l2;
  if (text == "l1") return Metric::l1;
  if (text == "chebyshev") return Metric::chebyshev;
  if (text == "custom") return Metric::custom;
  throw Error(ErrorCode::parse, "unknown metric '" + std::string(text) + "'");
}

bool TargetSpec::complete() const {
  for (const auto& v : values) {
    if (!v) return false;
  }
  return true;
}

HamiltonianParams TargetSpec::params() const {
  if (!complete()) throw Error(ErrorCode::invalid_argument, "target lacks one of f_q, alpha, f_r, kappa, g");
  return {*values[0], *values[1], *values[2], *values[3], *values[4]};
}

TargetSpec parse_target(std::string_view text) {
  TargetSpec spec;
  for_each_pair(text, [&](std::string_view key, std::string_view val) {
    const Term t = require_term(key);
    if (is_derived(t)) {
      throw Error(ErrorCode::parse, "'" + std::string(key) + "' is derived; enable it through weights");
    }
    if (spec.value(t)) throw Error(ErrorCode::parse, "duplicate key '" + std::string(key) + "'");
    spec.value(t) = parse_number(val, key);
  });
  return spec;
}

void parse_weights(std::string_view text, TargetSpec& spec) {
  for_each_pair(text, [&](std::string_view key, std::string_view val) {
    const Term t = require_term(key);
    spec.set_weight(t, parse_number(val, key));
    if (is_derived(t)) spec.derived[static_cast<std::size_t>(t)] = true;
  });
}

TargetSpec target_from_mapping(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse, "target mapping must be an object");
  TargetSpec spec;
  for (const auto& [key, val] : j.items()) {
    if (key == "weights") {
      if (!val.is_object()) throw Error(ErrorCode::parse, "'weights' must be an object");
      for (const auto& [wk, wv] : val.items()) {
        if (!wv.is_number()) throw Error(ErrorCode::parse, "weight '" + wk + "' must be a number");
        const Term t = require_term(wk);
        spec.set_weight(t, wv.get<double>());
        if (is_derived(t)) spec.derived[static_cast<std::size_t>(t)] = true;
      }
    } else if (key == "derived") {
      if (!val.is_array()) throw Error(ErrorCode::parse, "'derived' must be an array");
      for (const auto& name : val) {
        if (!name.is_string()) throw Error(ErrorCode::parse, "'derived' entries must be strings");
        const Term t = require_term(name.get<std::string>());
        if (!is_derived(t)) throw Error(ErrorCode::parse, "'" + name.get<std::string>() + "' is not a derived term");
        spec.derived[static_cast<std::size_t>(t)] = true;
      }
    } else if (key == "metric") {
      if (!val.is_string()) throw Error(ErrorCode::parse, "'metric' must be a string");
      spec.metric = parse_metric(val.get<std::string>());
    } else if (key == "expression") {
      if (!val.is_string()) throw Error(ErrorCode::parse, "'expression' must be a string");
      spec.expression = val.get<std::string>();
    } else {
      const auto t = parse_term(key);
      if (!t || is_derived(*t)) throw Error(ErrorCode::parse, "unknown target key '" + key + "'");
      if (!val.is_number()) throw Error(ErrorCode::parse, "target '" + key + "' must be a number");
      spec.value(*t) = val.get<double>();
    }
  }
  if (!spec.expression.empty() && spec.metric != Metric::custom) spec.metric = Metric::custom;
  return spec;
}

json to_json(const TargetSpec& spec) {
  json j = json::object();
  for (std::size_t i = 0; i < kBaseTermCount; ++i) {
    if (spec.values[i]) j[std::string(kTermNames[i])] = *spec.values[i];
  }
  json w = json::object();
  for (std::size_t i = 0; i < kTermCount; ++i) {
    if (spec.weights[i]) w[std::string(kTermNames[i])] = *spec.weights[i];
  }
  if (!w.empty()) j["weights"] = w;
  json d = json::array();
  for (std::size_t i = kBaseTermCount; i < kTermCount; ++i) {
    if (spec.derived[i]) d.push_back(std::string(kTermNames[i]));
  }
  if (!d.empty()) j["derived"] = d;
  j["metric"] = std::string(to_string(spec.metric));
  if (!spec.expression.empty()) j["expression"] = spec.expression;
  return j;
}

ResolvedTarget resolve(const TargetSpec& spec) {
  ResolvedTarget r;
  r.metric = spec.metric;
  r.expression = spec.expression;
  if (spec.metric == Metric::custom && spec.expression.empty()) {
    throw Error(ErrorCode::invalid_argument, "custom metric needs an expression");
  }

  for (std::size_t i = 0; i < kBaseTermCount; ++i) {
    if (!spec.values[i]) continue;
    const double v = *spec.values[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "target " + std::string(kTermNames[i]) + " is not finite");
    r.value[i] = v;
    r.has_value[i] = true;
  }
  if (r.has_value[1] && !(r.value[1] < 0.0)) throw Error(ErrorCode::invalid_argument, "target alpha must be < 0");

  const auto have = [&](Term t) { return r.has_value[static_cast<std::size_t>(t)]; };
  const auto val = [&](Term t) { return r.value[static_cast<std::size_t>(t)]; };
  if (have(Term::f_q) && have(Term::f_r)) {
    r.value[static_cast<std::size_t>(Term::Delta)] = val(Term::f_r) - val(Term::f_q);
    r.has_value[static_cast<std::size_t>(Term::Delta)] = true;
  }
  if (have(Term::f_q) && have(Term::f_r) && have(Term::alpha) && have(Term::g)) {
    try {
      const auto s = physics::perturbative_shifts(val(Term::g), val(Term::f_q), val(Term::f_r), val(Term::alpha));
      r.value[static_cast<std::size_t>(Term::chi)] = s.chi;
      r.value[static_cast<std::size_t>(Term::chi_L)] = s.chi_L;
      r.has_value[static_cast<std::size_t>(Term::chi)] = true;
      r.has_value[static_cast<std::size_t>(Term::chi_L)] = true;
    } catch (const Error&) {
      // Left unset; an enabled chi term then fails below.
    }
  }

  bool any_positive = false;
  for (std::size_t i = 0; i < kTermCount; ++i) {
    double w = 0.0;
    if (spec.weights[i]) {
      w = *spec.weights[i];
    } else if (i < kBaseTermCount ? r.has_value[i] : spec.derived[i]) {
      w = 1.0;
    }
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::invalid_argument, "weight for " + std::string(kTermNames[i]) + " must be finite and >= 0");
    }
    if (i >= kBaseTermCount && !spec.derived[i]) w = 0.0;
    if (w > 0.0 && !r.has_value[i] && spec.metric != Metric::custom) {
      throw Error(ErrorCode::invalid_argument,
                  "weighted term " + std::string(kTermNames[i]) + " has no target value");
    }
    if (w > 0.0 && spec.metric != Metric::custom && r.value[i] == 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "relative metric undefined: target " + std::string(kTermNames[i]) + " is 0");
    }
    r.weight[i] = w;
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive && spec.metric != Metric::custom) {
    throw Error(ErrorCode::invalid_argument, "at least one weight must be > 0");
  }
  return r;
}

}  // namespace cqd::query
