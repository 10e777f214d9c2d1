#include <gtest/gtest.h>

#include <algorithm>

#include "cqd/circuit.hpp"
#include "cqd/error.hpp"
#include "cqd/physics_registry.hpp"
#include "cqd/shifts.hpp"
#include "cqd/transmon.hpp"

using namespace cqd;
using nlohmann::json;

TEST(Registry, PositionalAndNamedAgree) {
  const json a = physics::call("coupling_g_capacitive", json::array({5.0, 100.0, 357.0, 7.0, 12.5, 0.25}));
  const json b = physics::call("coupling_g_capacitive",
                               {{"C_c", 5.0}, {"C_q", 100.0}, {"C_r", 357.0}, {"f_r", 7.0}, {"E_J", 12.5}, {"E_C", 0.25}});
  EXPECT_EQ(a.get<double>(), b.get<double>());
  EXPECT_EQ(a.get<double>(), physics::coupling_g_capacitive(5.0, 100.0, 357.0, 7.0, 12.5, 0.25));
}

TEST(Registry, StructuredResults) {
  const json s = physics::call("transmon_fq_alpha", {{"E_J", 12.5}, {"E_C", 0.25}});
  const auto native = physics::transmon_fq_alpha(12.5, 0.25);
  EXPECT_EQ(s.at("f_q").get<double>(), native.f_q);
  EXPECT_EQ(s.at("alpha").get<double>(), native.alpha);
  const json r = physics::call("resonator_effective_capacitance", json::array({7.0, 50.0, "half"}));
  EXPECT_NEAR(r.get<double>(), 714.2857142857143, 1e-9);
}

TEST(Registry, OptionalArgumentsOfOracle) {
  const json full = physics::call("numerical_shifts", {{"f_r", 7.0}, {"f_q", 5.0}, {"alpha", -0.2}, {"g", 0.05}});
  const json rwa =
      physics::call("numerical_shifts", {{"f_r", 7.0}, {"f_q", 5.0}, {"alpha", -0.2}, {"g", 0.05}, {"rwa", true}});
  EXPECT_NE(full.at("chi").get<double>(), rwa.at("chi").get<double>());
}

TEST(Registry, UnknownNameOrArgument) {
  auto code = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io;
  };
  EXPECT_EQ(code([] { physics::call("warp_drive", json::array()); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code([] { physics::call("charging_energy", json::array({1.0, 2.0})); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code([] { physics::call("charging_energy", {{"Cap", 1.0}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code([] { physics::call("charging_energy", json::array({"x"})); }), ErrorCode::invalid_argument);
  // Errors from the function itself propagate with their own code.
  EXPECT_EQ(code([] { physics::call("g_from_lamb", json::array({1e-3, 6.0, 6.0})); }), ErrorCode::degenerate_detuning);
}

TEST(Registry, ExportsSortedAndCallable) {
  const auto fns = physics::exported_functions();
  EXPECT_GE(fns.size(), 20u);
  EXPECT_TRUE(std::is_sorted(fns.begin(), fns.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
  const auto has = [&](const char* n) {
    return std::any_of(fns.begin(), fns.end(), [&](const auto& s) { return s.name == n; });
  };
  for (const char* n : {"charging_energy", "find_ej_ec", "g_from_lamb", "numerical_shifts", "flux_tuned_fq"}) {
    EXPECT_TRUE(has(n)) << n;
  }
}
