#include <gtest/gtest.h>

#include <cmath>

#include "cqd/circuit.hpp"
#include "cqd/compose.hpp"
#include "cqd/error.hpp"
#include "cqd/interpolate.hpp"
#include "cqd/surrogate.hpp"
#include "cqd/synth.hpp"
#include "cqd/transmon.hpp"

using namespace cqd;
using namespace cqd::interp;

namespace {

query::TargetSpec target_of(const HamiltonianParams& p) {
  query::TargetSpec s;
  s.value(query::Term::f_q) = p.f_q;
  s.value(query::Term::alpha) = p.alpha;
  s.value(query::Term::f_r) = p.f_r;
  s.value(query::Term::kappa) = p.kappa;
  s.value(query::Term::g) = p.g;
  return s;
}

const db::ComponentStore& interp_store() {
  static const auto store = db::synth_generate(db::synth_preset("interp"), 5);
  return store;
}

db::SynthGeometry stored_geometry(const db::ComponentStore& s, std::size_t q, std::size_t r) {
  const auto& qg = s.qubits()[q].geometry;
  const auto& rg = s.resonators()[r].geometry;
  return {qg.cross_length, qg.claw_length, rg.cpw_length, rg.feedline_coupling_dim};
}

}  // namespace

TEST(Interpolate, QubitScaleRule) {
  const auto s = qubit_scale(-0.2, -0.25, 0.05, 0.06);
  EXPECT_DOUBLE_EQ(s.s_cross, 0.8);
  EXPECT_DOUBLE_EQ(s.s_claw, 0.8 * 1.2);
}

TEST(Interpolate, ClawWindowIsStrict) {
  EXPECT_TRUE(within_claw_window(5.0, 5.0, 0.3));
  EXPECT_TRUE(within_claw_window(6.4, 5.0, 0.3));
  EXPECT_FALSE(within_claw_window(6.5, 5.0, 0.3));
  EXPECT_FALSE(within_claw_window(3.5, 5.0, 0.3));
}

TEST(Interpolate, LengthRecalcTrigger) {
  EXPECT_FALSE(needs_length_recalc(0.1, 0.1, 400.0, 0.0, 4000.0, CouplingKind::lumped, 0.01));
  EXPECT_TRUE(needs_length_recalc(5.0, 0.1, 400.0, 0.0, 4000.0, CouplingKind::lumped, 0.01));
  EXPECT_TRUE(needs_length_recalc(0.1, 5.0, 400.0, 0.0, 4000.0, CouplingKind::lumped, 0.01));
  EXPECT_TRUE(needs_length_recalc(0.0, 0.0, 400.0, 80.0, 4000.0, CouplingKind::distributed, 0.01));
}

TEST(Interpolate, FeedlineCapacitanceInvertsKappa) {
  for (const double C : {1.0, 5.0, 12.0}) {
    const double k = distributed_kappa(7.0, 357.0, C, 50.0);
    EXPECT_NEAR(distributed_feedline_capacitance(7.0, 357.0, k, 50.0), C, 1e-10);
  }
}

TEST(Interpolate, FixedPointIsIdentity) {
  const auto& store = interp_store();
  const auto cfg = db::synth_preset("interp");
  for (const std::size_t g : {1u, 4u, 7u}) {
    const auto& group = store.claw_groups()[g];
    for (const std::size_t pick : {0u, 37u, 100u}) {
      const std::size_t q = group.qubits[pick % group.qubits.size()];
      const std::size_t r = group.resonators[pick % group.resonators.size()];
      const auto truth = db::ground_truth(cfg.model, stored_geometry(store, q, r), 15.0, ResonatorType::quarter);
      const auto d = interpolate_design(store, target_of(truth));
      EXPECT_EQ(d.base_qubit_id, store.qubits()[q].id);
      EXPECT_EQ(d.base_resonator_id, store.resonators()[r].id);
      EXPECT_NEAR(d.scale.s_cross, 1.0, 1e-9);
      EXPECT_NEAR(d.scale.s_claw, 1.0, 1e-9);
      EXPECT_NEAR(d.scale.s_res, 1.0, 1e-9);
      EXPECT_NEAR(d.scale.s_fline, 1.0, 1e-9);
      EXPECT_TRUE(d.warnings.empty());
      EXPECT_NEAR(d.estimated.g / truth.g, 1.0, 1e-9);
      EXPECT_NEAR(d.estimated.kappa / truth.kappa, 1.0, 1e-9);
    }
  }
}

TEST(Interpolate, RequiredCircuitConsistent) {
  const auto t = target_of({4.6, -0.21, 6.8, 0.6, 0.09});
  const auto d = interpolate_design(interp_store(), t);
  EXPECT_NEAR(d.required.C_q + d.required.C_c, d.required.C_sigma, 1e-9);
  EXPECT_NEAR(physics::charging_energy(d.required.C_sigma), d.required.E_C, 1e-12);
  const auto s = physics::transmon_fq_alpha(d.required.E_J, d.required.E_C);
  EXPECT_NEAR(s.f_q, 4.6, 1e-7);
  EXPECT_NEAR(s.alpha, -0.21, 1e-7);
}

TEST(Interpolate, MovesTowardTarget) {
  const auto cfg = db::synth_preset("interp");
  const db::SynthGeometry geo{233.0, 101.0, 4321.0, 123.0};
  const auto truth = db::ground_truth(cfg.model, geo, 15.0, ResonatorType::quarter);
  const auto d = interpolate_design(interp_store(), target_of(truth));
  const auto& g = d.geometry;
  const auto got = db::ground_truth(cfg.model, {g.cross_length, g.claw_length, g.cpw_length, g.feedline_coupling_dim},
                                    d.required.E_J, ResonatorType::quarter);
  EXPECT_NEAR(got.f_r / truth.f_r, 1.0, 0.01);
  EXPECT_NEAR(got.alpha / truth.alpha, 1.0, 0.03);
  EXPECT_NEAR(got.g / truth.g, 1.0, 0.03);
}

TEST(Interpolate, LowRatioWarns) {
  const auto cfg = db::synth_preset("interp");
  const db::SynthGeometry geo{225.0, 100.0, 4375.0, 125.0};
  const double E_C = physics::charging_energy(cfg.model.C_q(geo.cross_length) + cfg.model.C_c(geo.claw_length));
  const auto d = interpolate_design(interp_store(), target_of(db::ground_truth(cfg.model, geo, 20 * E_C, ResonatorType::quarter)));
  EXPECT_TRUE(d.has_warning(WarningKind::low_ej_ec));
}

TEST(Interpolate, OutOfHullWarns) {
  const auto cfg = db::synth_preset("interp");
  const db::SynthGeometry geo{500.0, 100.0, 4375.0, 125.0};
  const auto d = interpolate_design(interp_store(), target_of(db::ground_truth(cfg.model, geo, 15.0, ResonatorType::quarter)));
  EXPECT_TRUE(d.has_warning(WarningKind::trust_region));
}

TEST(Interpolate, IncompleteTargetRejected) {
  auto t = target_of({4.6, -0.21, 6.8, 0.6, 0.09});
  t.value(query::Term::kappa).reset();
  EXPECT_THROW(interpolate_design(interp_store(), t), Error);
}

TEST(Interpolate, LumpedStoreUsesCouplers) {
  db::SynthConfig cfg;
  cfg.layout = db::SynthLayout::grid;
  cfg.couplers = 4;
  for (int i = 0; i < 3; ++i) cfg.groups.push_back({60.0 + 20.0 * i, 4, 0, 6});
  const auto store = db::synth_generate(cfg, 3);
  const db::CandidateComposer composer(store, {15.0, 0.0, 50.0});
  HamiltonianParams p;
  composer.for_each(0, 1, [&](const db::CandidateDesign& c) { p = c.params; });
  InterpolateOptions opt;
  opt.type = ResonatorType::half;
  const auto d = interpolate_design(store, target_of(p), opt);
  EXPECT_TRUE(d.base_coupler_id.has_value());
  EXPECT_EQ(d.surrogate.kind, CouplingKind::lumped);
  EXPECT_NEAR(d.estimated.f_r / p.f_r, 1.0, 1e-3);
}

TEST(Interpolate, JsonHasScaleAndWarnings) {
  const auto d = interpolate_design(interp_store(), target_of({4.6, -0.21, 6.8, 0.6, 0.09}));
  const auto j = to_json(d);
  for (const char* key : {"scale_factors", "warnings", "geometry", "estimated", "required"}) EXPECT_TRUE(j.contains(key)) << key;
}
