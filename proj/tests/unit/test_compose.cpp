#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "cqd/circuit.hpp"
#include "cqd/compose.hpp"
#include "cqd/error.hpp"
#include "cqd/store.hpp"
#include "cqd/synth.hpp"
#include "cqd/transmon.hpp"

using namespace cqd;
using namespace cqd::db;

TEST(Compose, ClawMatch) {
  EXPECT_TRUE(claw_match(60.0, 60.0, 0.0));
  EXPECT_FALSE(claw_match(60.0, 60.0000001, 0.0));
  EXPECT_TRUE(claw_match(60.0, 62.0, 0.05));
  EXPECT_FALSE(claw_match(60.0, 70.0, 0.05));
}

TEST(Compose, PipelineMatchesPhysics) {
  const auto q = qubit_circuit(80.0, 5.0, 15.0);
  EXPECT_NEAR(q.E_C, physics::charging_energy(85.0), 1e-15);
  EXPECT_EQ(q.spectrum.f_q, physics::transmon_fq_alpha(15.0, q.E_C).f_q);
  const double C_r = resonator_capacitance(7.0, 50.0, ResonatorType::half);
  const auto r = lumped_circuit(7.0, C_r, 10.0, 2.0, 50.0);
  const auto loaded = physics::coupled_res_freq_and_kappa(7.0, C_r, 10.0, 2.0, 50.0);
  EXPECT_EQ(r.f_r, loaded.f_r);
  EXPECT_EQ(r.kappa, loaded.kappa);
  const auto h = hamiltonian(q, r, 15.0);
  EXPECT_NEAR(h.g, physics::coupling_g_capacitive(5.0, 85.0, C_r, r.f_r, 15.0, q.E_C), 1e-15);
  EXPECT_EQ(h.f_r, r.f_r);
  EXPECT_EQ(h.alpha, q.spectrum.alpha);
}

TEST(Compose, DistributedKeepsStoredValues) {
  const auto r = distributed_circuit(6.8, 0.4, 380.0);
  EXPECT_EQ(r.f_r, 6.8);
  EXPECT_EQ(r.kappa, 0.4);
}

TEST(Compose, CountsMatchIndexArithmetic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    SynthConfig c;
    const int groups = 1 + static_cast<int>(rng() % 4);
    for (int g = 0; g < groups; ++g) {
      c.groups.push_back({40.0 + 10.0 * static_cast<double>(rng() % 5), rng() % 6, rng() % 6, rng() % 5});
    }
    c.couplers = rng() % 5;
    const auto store = synth_generate(c, rng());
    const CandidateComposer composer(store, {15.0, 0.0, 50.0});
    const auto counts = composer.for_each([](const CandidateDesign&) {});
    const auto stats = store_stats(store);
    EXPECT_EQ(counts.produced + counts.skipped, stats.composed);
    EXPECT_EQ(enumerate_count(store, 0.0), stats.composed);
    std::size_t per_qubit = 0;
    for (std::size_t i = 0; i < composer.qubit_count(); ++i) per_qubit += composer.candidates_for_qubit(i);
    EXPECT_EQ(per_qubit, stats.composed);
  }
}

TEST(Compose, ToleranceWidensMatches) {
  SynthConfig c;
  c.groups = {{60.0, 2, 3, 0}, {62.0, 2, 3, 0}, {80.0, 2, 3, 0}};
  const auto store = synth_generate(c, 1);
  EXPECT_EQ(enumerate_count(store, 0.0), 18u);
  EXPECT_EQ(enumerate_count(store, 0.05), 30u);
  EXPECT_EQ(enumerate_count(store, 0.5), 54u);
}

TEST(Compose, CandidatesAreUniqueAndDeterministic) {
  const auto store = synth_generate(synth_preset("small"), 2);
  const CandidateComposer composer(store, {15.0, 0.0, 50.0});
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::vector<double> first;
  composer.for_each([&](const CandidateDesign& d) {
    EXPECT_TRUE(seen.insert({d.qubit, d.resonator, d.coupler}).second);
    EXPECT_EQ(store.qubits()[d.qubit].geometry.claw_length, store.resonators()[d.resonator].geometry.claw_length);
    EXPECT_EQ(d.coupler_id.empty(), d.coupler == kNoCoupler);
    first.push_back(d.params.g);
  });
  std::vector<double> second;
  composer.for_each([&](const CandidateDesign& d) { second.push_back(d.params.g); });
  EXPECT_EQ(first, second);
}

TEST(Compose, LumpedUsesCouplerCapacitances) {
  const auto store = synth_generate(synth_preset("small"), 4);
  const CandidateComposer composer(store, {15.0, 0.0, 50.0});
  composer.for_each([&](const CandidateDesign& d) {
    const auto& r = store.resonators()[d.resonator];
    if (r.coupling_kind != CouplingKind::lumped) return;
    ASSERT_NE(d.coupler, kNoCoupler);
    const auto& c = store.couplers()[d.coupler];
    const double C_r = resonator_capacitance(r.results.f_bare, r.Z_c, r.res_type);
    const auto loaded = physics::coupled_res_freq_and_kappa(r.results.f_bare, C_r, c.cmatrix.C_rf, c.cmatrix.C_cg, 50.0);
    EXPECT_NEAR(d.params.f_r, loaded.f_r, 1e-12);
    EXPECT_NEAR(d.params.kappa, loaded.kappa, 1e-12);
  });
}

TEST(Compose, SubsetRangesPartitionTheWhole) {
  const auto store = synth_generate(synth_preset("small"), 8);
  const CandidateComposer composer(store, {15.0, 0.0, 50.0});
  const auto all = composer.for_each([](const CandidateDesign&) {});
  std::size_t sum = 0;
  for (std::size_t b = 0; b < composer.qubit_count(); b += 5) {
    sum += composer.for_each(b, b + 5, [](const CandidateDesign&) {}).produced;
  }
  EXPECT_EQ(sum, all.produced);
}

TEST(Synth, DeterministicPerSeed) {
  const auto a = synth_generate(synth_preset("small"), 17);
  const auto b = synth_generate(synth_preset("small"), 17);
  const auto c = synth_generate(synth_preset("small"), 18);
  ASSERT_EQ(a.qubits().size(), b.qubits().size());
  for (std::size_t i = 0; i < a.resonators().size(); ++i) {
    EXPECT_EQ(to_json(a.resonators()[i]), to_json(b.resonators()[i]));
  }
  EXPECT_EQ(a.manifest().at("generator").at("seed"), 17);
  EXPECT_NE(c.manifest().at("generator").at("seed"), 17);
}

TEST(Synth, PresetsKnown) {
  for (const auto& name : synth_preset_names()) EXPECT_NO_THROW(synth_preset(name));
  EXPECT_THROW(synth_preset("nope"), Error);
}

TEST(Synth, ModelRoundTripsThroughJson) {
  SynthModel m;
  m.Cq0 = 61.0;
  m.K_half = 5.9e4;
  const auto back = SynthModel::from_json(m.to_json());
  EXPECT_EQ(back.Cq0, 61.0);
  EXPECT_EQ(back.K_half, 5.9e4);
}

TEST(Synth, TrendsAreMonotone) {
  const SynthModel m;
  EXPECT_LT(m.f_bare(4000, 60, 100, ResonatorType::quarter, CouplingKind::distributed),
            m.f_bare(3900, 60, 100, ResonatorType::quarter, CouplingKind::distributed));
  EXPECT_LT(m.f_bare(4000, 90, 100, ResonatorType::quarter, CouplingKind::distributed),
            m.f_bare(4000, 60, 100, ResonatorType::quarter, CouplingKind::distributed));
  const double f = 7.0;
  EXPECT_LT(m.kappa_distributed(f, 80, ResonatorType::quarter), m.kappa_distributed(f, 120, ResonatorType::quarter));
}

TEST(Synth, GroundTruthMatchesComposedCandidate) {
  SynthConfig c;
  c.layout = SynthLayout::grid;
  c.groups = {{70.0, 3, 4, 0}};
  const auto store = synth_generate(c, 1);
  const CandidateComposer composer(store, {15.0, 0.0, 50.0});
  composer.for_each([&](const CandidateDesign& d) {
    const auto& q = store.qubits()[d.qubit];
    const auto& r = store.resonators()[d.resonator];
    const auto t = ground_truth(c.model,
                                {q.geometry.cross_length, q.geometry.claw_length, r.geometry.cpw_length,
                                 r.geometry.feedline_coupling_dim},
                                15.0, ResonatorType::quarter);
    EXPECT_NEAR(t.f_q, d.params.f_q, 1e-12);
    EXPECT_NEAR(t.g, d.params.g, 1e-12);
    EXPECT_NEAR(t.kappa, d.params.kappa, 1e-12);
  });
}

TEST(Synth, InvertedRangeRejected) {
  SynthConfig c;
  c.groups = {{60.0, 1, 1, 0}};
  c.cross_length = {300.0, 100.0};
  EXPECT_THROW(synth_generate(c, 1), Error);
}
