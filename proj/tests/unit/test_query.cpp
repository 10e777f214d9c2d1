#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "cqd/compose.hpp"
#include "cqd/cost.hpp"
#include "cqd/error.hpp"
#include "cqd/expression.hpp"
#include "cqd/search.hpp"
#include "cqd/shifts.hpp"
#include "cqd/synth.hpp"
#include "cqd/target.hpp"

using namespace cqd;
using namespace cqd::query;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::io;
}

const HamiltonianParams kCandidate{4.3, -0.21, 6.6, 0.5, 0.07};

}  // namespace

TEST(Target, ParsesAllTerms) {
  const auto t = parse_target("f_q=4.2, alpha=-0.2,f_r=6.5,kappa=0.4,g=0.06");
  ASSERT_TRUE(t.complete());
  EXPECT_EQ(t.params(), (HamiltonianParams{4.2, -0.2, 6.5, 0.4, 0.06}));
}

TEST(Target, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_target("f_q=4.2,f_q=4.3"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_target("chi=0.001"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_target("f_q=abc"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_target("bogus=1"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_target("f_q"); }), ErrorCode::parse);
}

TEST(Target, WeightsEnableDerivedTerms) {
  auto t = parse_target("f_q=4.2,alpha=-0.2,f_r=6.5,kappa=0.4,g=0.06");
  parse_weights("f_r=2,chi=0.5", t);
  const auto r = resolve(t);
  EXPECT_EQ(r.weight[static_cast<std::size_t>(Term::f_r)], 2.0);
  EXPECT_EQ(r.weight[static_cast<std::size_t>(Term::chi)], 0.5);
  EXPECT_EQ(r.weight[static_cast<std::size_t>(Term::chi_L)], 0.0);
  EXPECT_EQ(r.weight[static_cast<std::size_t>(Term::g)], 1.0);
  const auto s = physics::perturbative_shifts(0.06, 4.2, 6.5, -0.2);
  EXPECT_NEAR(r.value[static_cast<std::size_t>(Term::chi)], s.chi, 1e-15);
}

TEST(Target, ResolveInvariants) {
  EXPECT_EQ(code_of([] { resolve(parse_target("f_q=4.2,alpha=0.2")); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] {
              auto t = parse_target("f_q=4.2");
              parse_weights("f_q=-1", t);
              resolve(t);
            }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] {
              auto t = parse_target("f_q=4.2");
              parse_weights("f_q=0", t);
              resolve(t);
            }),
            ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { resolve(parse_target("f_q=0")); }), ErrorCode::invalid_argument);
}

TEST(Target, FromMapping) {
  const json j = {{"f_q", 4.2},   {"alpha", -0.2},          {"f_r", 6.5},
                  {"kappa", 0.4}, {"g", 0.06},              {"weights", {{"f_r", 2.0}}},
                  {"derived", {"chi_L"}}, {"metric", "l1"}};
  const auto t = target_from_mapping(j);
  EXPECT_EQ(t.metric, Metric::l1);
  EXPECT_TRUE(t.derived[static_cast<std::size_t>(Term::chi_L)]);
  EXPECT_EQ(*t.weights[static_cast<std::size_t>(Term::f_r)], 2.0);
  EXPECT_EQ(code_of([] { target_from_mapping(json{{"f_q", 4.2}, {"colour", 1}}); }), ErrorCode::parse);
  const auto back = target_from_mapping(to_json(t));
  EXPECT_EQ(back.params(), t.params());
  EXPECT_EQ(back.metric, t.metric);
}

TEST(Expression, ArithmeticAndPrecedence) {
  const auto none = [](std::string_view) -> std::optional<std::size_t> { return std::nullopt; };
  auto eval = [&](const char* text) { return Expression::compile(text, none).evaluate({}); };
  EXPECT_DOUBLE_EQ(eval("1 + 2 * 3"), 7.0);
  EXPECT_DOUBLE_EQ(eval("(1 + 2) * 3"), 9.0);
  EXPECT_DOUBLE_EQ(eval("2 ^ 3 ^ 2"), 512.0);
  EXPECT_DOUBLE_EQ(eval("-2 ^ 2"), -4.0);
  EXPECT_DOUBLE_EQ(eval("abs(3 - 5) / 4"), 0.5);
  EXPECT_DOUBLE_EQ(eval("1e-3 * 2"), 2e-3);
}

TEST(Expression, Variables) {
  const auto resolve = [](std::string_view name) -> std::optional<std::size_t> {
    if (name == "x") return 0;
    if (name == "y") return 3;
    return std::nullopt;
  };
  const auto e = Expression::compile("x * y + x", resolve);
  const std::vector<double> vars{2.0, 0.0, 0.0, 5.0};
  EXPECT_DOUBLE_EQ(e.evaluate(vars), 12.0);
  EXPECT_EQ(e.slots(), (std::vector<std::size_t>{0, 3}));
}

TEST(Expression, Errors) {
  const auto none = [](std::string_view) -> std::optional<std::size_t> { return std::nullopt; };
  for (const char* bad : {"", "1 +", "(1", "1)", "unknown", "abs 1", "2 $ 3", "sqrt(4)"}) {
    EXPECT_EQ(code_of([&] { Expression::compile(bad, none); }), ErrorCode::parse) << bad;
  }
  std::string deep(100, '(');
  deep += "1";
  deep += std::string(100, ')');
  EXPECT_EQ(code_of([&] { Expression::compile(deep, none); }), ErrorCode::parse);
}

TEST(Cost, ZeroAtTarget) {
  TargetSpec t;
  t.value(Term::f_q) = kCandidate.f_q;
  t.value(Term::alpha) = kCandidate.alpha;
  t.value(Term::f_r) = kCandidate.f_r;
  t.value(Term::kappa) = kCandidate.kappa;
  t.value(Term::g) = kCandidate.g;
  for (const auto metric : {Metric::weighted_relative_l2, Metric::l1, Metric::chebyshev}) {
    t.metric = metric;
    EXPECT_EQ(cost(t, kCandidate), 0.0);
  }
}

TEST(Cost, MetricsByHand) {
  auto t = parse_target("f_q=4.0,g=0.1");
  parse_weights("g=2", t);
  const double ef = (4.0 - 4.3) / 4.0, eg = (0.1 - 0.07) / 0.1;
  EXPECT_NEAR(cost(t, kCandidate), ef * ef + 2 * eg * eg, 1e-14);
  t.metric = Metric::l1;
  EXPECT_NEAR(cost(t, kCandidate), std::abs(ef) + 2 * std::abs(eg), 1e-14);
  t.metric = Metric::chebyshev;
  EXPECT_NEAR(cost(t, kCandidate), std::max(std::abs(ef), 2 * std::abs(eg)), 1e-14);
}

TEST(Cost, DerivedTermsUseCandidateParameters) {
  auto t = parse_target("f_q=4.2,alpha=-0.2,f_r=6.5,g=0.06");
  parse_weights("f_q=0,alpha=0,f_r=0,g=0,chi=1", t);
  const CostFunction f(t);
  EXPECT_EQ(f.weighted_terms(), (std::vector<Term>{Term::chi}));
  const double P = physics::perturbative_shifts(0.06, 4.2, 6.5, -0.2).chi;
  const double p = physics::perturbative_shifts(kCandidate.g, kCandidate.f_q, kCandidate.f_r, kCandidate.alpha).chi;
  EXPECT_NEAR(f(kCandidate), (P - p) * (P - p) / (P * P), 1e-14);
}

TEST(Cost, CustomExpression) {
  auto t = parse_target("f_q=4.0,g=0.1");
  t.metric = Metric::custom;
  t.expression = "abs(f_q - f_q_target) + 10 * (g - g_target)^2";
  EXPECT_NEAR(cost(t, kCandidate), 0.3 + 10 * 0.03 * 0.03, 1e-14);
  t.expression = "f_q - nonsense";
  EXPECT_THROW(CostFunction{t}, Error);
}

TEST(Cost, MonotoneInEachError) {
  const auto t = parse_target("f_q=4.2,alpha=-0.2,f_r=6.5,kappa=0.4,g=0.06");
  HamiltonianParams p = t.params();
  double last = cost(t, p);
  for (int i = 1; i < 10; ++i) {
    p.g = 0.06 * (1.0 + 0.05 * i);
    const double c = cost(t, p);
    EXPECT_GT(c, last);
    last = c;
  }
}

namespace {

using Key = std::tuple<double, std::string, std::string, std::string>;

std::vector<Key> brute_force(const db::ComponentStore& store, const TargetSpec& t, double E_J, std::size_t k) {
  const CostFunction f(t);
  const db::CandidateComposer composer(store, {E_J, 0.0, 50.0});
  std::vector<Key> all;
  composer.for_each([&](const db::CandidateDesign& c) {
    all.emplace_back(f(c.params), std::string(c.qubit_id), std::string(c.resonator_id), std::string(c.coupler_id));
  });
  std::sort(all.begin(), all.end());
  all.resize(std::min(all.size(), k));
  return all;
}

std::vector<Key> keys(const QueryResult& r) {
  std::vector<Key> out;
  for (const auto& d : r.ranked) out.emplace_back(d.cost, d.qubit_id, d.resonator_id, d.coupler_id.value_or(""));
  return out;
}

db::ComponentStore medium_store(std::uint64_t seed) {
  db::SynthConfig c;
  for (int g = 0; g < 4; ++g) c.groups.push_back({50.0 + 10.0 * g, 6, 8, 4});
  c.couplers = 3;
  c.reference_devices = true;
  return db::synth_generate(c, seed);
}

}  // namespace

TEST(Search, MatchesBruteForce) {
  const auto t = parse_target("f_q=4.4,alpha=-0.21,f_r=6.8,kappa=0.3,g=0.07");
  for (const std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto store = medium_store(seed);
    for (const std::size_t k : {1u, 7u, 50u}) {
      SearchOptions opt;
      opt.k = k;
      const auto r = top_k_search(store, t, opt);
      EXPECT_EQ(keys(r), brute_force(store, t, *r.E_J, k));
    }
  }
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  const auto store = medium_store(11);
  const auto t = parse_target("f_q=4.4,alpha=-0.21,f_r=6.8,kappa=0.3,g=0.07");
  SearchOptions opt;
  opt.k = 15;
  const auto base = to_json(top_k_search(store, t, opt)).dump();
  for (const unsigned threads : {2u, 3u, 8u, 64u}) {
    opt.threads = threads;
    EXPECT_EQ(to_json(top_k_search(store, t, opt)).dump(), base);
  }
}

TEST(Search, DerivesJosephsonEnergyFromTarget) {
  const auto store = medium_store(2);
  const auto t = parse_target("f_q=4.4,alpha=-0.21,f_r=6.8,kappa=0.3,g=0.07");
  const auto r = top_k_search(store, t, {});
  ASSERT_TRUE(r.E_J && r.E_C);
  const auto jc = physics::find_ej_ec(4.4, -0.21);
  EXPECT_NEAR(*r.E_J, jc.E_J, 1e-12);
  SearchOptions opt;
  opt.E_J = 20.0;
  EXPECT_EQ(*top_k_search(store, t, opt).E_J, 20.0);
}

TEST(Search, ExplicitEjNeededWithoutQubitTargets) {
  const auto store = medium_store(2);
  EXPECT_EQ(code_of([&] { top_k_search(store, parse_target("f_r=6.8"), {}); }), ErrorCode::invalid_argument);
  SearchOptions opt;
  opt.E_J = 15.0;
  EXPECT_FALSE(top_k_search(store, parse_target("f_r=6.8"), opt).ranked.empty());
}

TEST(Search, ClosestPerTermAndValidated) {
  const auto store = medium_store(5);
  const auto t = parse_target("f_q=4.216,alpha=-0.153,f_r=6.116,kappa=0.16672,g=0.06");
  const auto r = top_k_search(store, t, {});
  ASSERT_EQ(r.closest_per_term.size(), 5u);
  for (const auto& c : r.closest_per_term) {
    ASSERT_EQ(c.designs.size(), 2u);
    EXPECT_LE(c.abs_error[0], c.abs_error[1]);
  }
  ASSERT_TRUE(r.closest_validated);
  EXPECT_EQ(r.closest_validated->id, "device-1");
  EXPECT_EQ(r.stats.validated_scanned, 6u);
}

TEST(Search, EmptyStore) {
  const db::ComponentStore store;
  EXPECT_EQ(code_of([&] { top_k_search(store, parse_target("f_q=4.2,alpha=-0.2"), {}); }), ErrorCode::empty_store);
}

TEST(Search, UnreachableQubitTargetIsInfeasible) {
  const auto store = medium_store(2);
  EXPECT_EQ(code_of([&] { top_k_search(store, parse_target("f_q=0.05,alpha=-3.0"), {}); }),
            ErrorCode::infeasible_target);
}

TEST(Search, ZeroKRejected) {
  const auto store = medium_store(1);
  SearchOptions opt;
  opt.k = 0;
  EXPECT_EQ(code_of([&] { top_k_search(store, parse_target("f_q=4.2,alpha=-0.2"), opt); }),
            ErrorCode::invalid_argument);
}

TEST(Search, JsonOmitsTimingByDefault) {
  const auto store = medium_store(1);
  const auto r = top_k_search(store, parse_target("f_q=4.2,alpha=-0.2,g=0.06"), {});
  const auto j = to_json(r);
  EXPECT_FALSE(j.at("search_stats").contains("wall_time_s"));
  EXPECT_TRUE(to_json(r, true).at("search_stats").contains("wall_time_s"));
  EXPECT_EQ(j.at("ranked").size(), 10u);
}
