#include "cqd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "cqd/circuit.hpp"
#include "cqd/compose.hpp"
#include "cqd/constants.hpp"
#include "cqd/error.hpp"

namespace cqd::db {

using nlohmann::json;

double SynthModel::f_unloaded(double cpw_length, ResonatorType type) const {
  return (type == ResonatorType::quarter ? K_quarter : K_half) / cpw_length;
}

double SynthModel::f_bare(double cpw_length, double claw_length, double dim, ResonatorType type,
                          CouplingKind kind) const {
  const double f0 = f_unloaded(cpw_length, type);
  const double C0 = physics::resonator_effective_capacitance(f0, Z_c, type);
  double load = C_c(claw_length);
  if (kind == CouplingKind::distributed) load += C_rf_distributed(dim);
  return f0 * std::sqrt(C0 / (C0 + load));
}

double SynthModel::kappa_distributed(double f_bare, double dim, ResonatorType type) const {
  const double C_r = physics::resonator_effective_capacitance(f_bare, Z_c, type) * units::femto;
  const double C = C_rf_distributed(dim) * units::femto;
  const double w = units::angular_from_ghz(f_bare);
  return units::mhz_from_angular(0.5 * Z_0 * w * w * C * C / (C_r + C));
}

json SynthModel::to_json() const {
  return json{{"Cq0", Cq0},
              {"Cq_per_cross", Cq_per_cross},
              {"Cc0", Cc0},
              {"Cc_per_claw", Cc_per_claw},
              {"K_quarter", K_quarter},
              {"K_half", K_half},
              {"Crf_per_dim_distributed", Crf_per_dim_distributed},
              {"Crf_per_dim_lumped", Crf_per_dim_lumped},
              {"Ccg0_lumped", Ccg0_lumped},
              {"Ccg_per_dim_lumped", Ccg_per_dim_lumped},
              {"Crf_per_finger", Crf_per_finger},
              {"Ccg0_coupler", Ccg0_coupler},
              {"Ccg_per_finger", Ccg_per_finger},
              {"Z_c", Z_c},
              {"Z_0", Z_0}};
}

SynthModel SynthModel::from_json(const json& j) {
  SynthModel m;
  auto get = [&j](const char* key, double& dst) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw Error(ErrorCode::schema, std::string("generator model lacks '") + key + "'");
    }
    dst = it->get<double>();
  };
  get("Cq0", m.Cq0);
  get("Cq_per_cross", m.Cq_per_cross);
  get("Cc0", m.Cc0);
  get("Cc_per_claw", m.Cc_per_claw);
  get("K_quarter", m.K_quarter);
  get("K_half", m.K_half);
  get("Crf_per_dim_distributed", m.Crf_per_dim_distributed);
  get("Crf_per_dim_lumped", m.Crf_per_dim_lumped);
  get("Ccg0_lumped", m.Ccg0_lumped);
  get("Ccg_per_dim_lumped", m.Ccg_per_dim_lumped);
  get("Crf_per_finger", m.Crf_per_finger);
  get("Ccg0_coupler", m.Ccg0_coupler);
  get("Ccg_per_finger", m.Ccg_per_finger);
  get("Z_c", m.Z_c);
  get("Z_0", m.Z_0);
  return m;
}

namespace {

// Platform-independent uniform draw on [0, 1).
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(const Range& r) { return r.lo + (r.hi - r.lo) * (*this)(); }

 private:
  std::mt19937_64 engine_;
};

void check_range(const Range& r, const char* what) {
  if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo > 0.0 && r.hi >= r.lo)) {
    throw Error(ErrorCode::invalid_argument, std::string("invalid range for ") + what);
  }
}

std::string make_id(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%06zu", prefix, n);
  return buf;
}

double grid_point(const Range& r, std::size_t i, std::size_t n) {
  if (n <= 1) return 0.5 * (r.lo + r.hi);
  return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

SimMeta synthetic_meta() { return {"synthetic", 20.0, 0.1, 10}; }
Provenance synthetic_provenance() { return {false, "synthetic generator"}; }

// Two-dimensional layout of n points over (a, b). Grid fills a near-square
// lattice row by row; random draws both coordinates.
std::vector<std::pair<double, double>> layout_2d(std::size_t n, const Range& a, const Range& b,
                                                 SynthLayout layout, Uniform& rng) {
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  if (layout == SynthLayout::random) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng(a);
      out.emplace_back(x, rng(b));
    }
    return out;
  }
  const auto na = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t nb = na == 0 ? 0 : (n + na - 1) / na;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(grid_point(a, i / std::max<std::size_t>(nb, 1), na), grid_point(b, i % std::max<std::size_t>(nb, 1), nb));
  }
  return out;
}

}  // namespace

std::vector<ValidatedDeviceEntry> reference_devices() {
  struct Row {
    double f01, alpha, fres, kappa, chi_L, g;
  };
  static constexpr Row rows[] = {
      {4.216, -153.0, 6.116, 0.16672, 1.56, 60.0}, {3.896, -154.0, 6.353, 0.18793, 1.35, 66.0},
      {4.451, -189.0, 6.472, 6.47625, 1.97, 70.0}, {3.586, -164.0, 6.568, 0.21943, 1.02, 66.0},
      {4.101, -210.0, 6.655, 2.43003, 0.82, 52.0}, {3.881, -176.0, 6.704, 0.78668, 0.36, 37.0},
  };
  std::vector<ValidatedDeviceEntry> out;
  int n = 1;
  for (const auto& r : rows) {
    ValidatedDeviceEntry e;
    e.id = "device-" + std::to_string(n++);
    e.measured = {r.f01, r.alpha, r.fres, r.kappa, r.chi_L, r.g};
    e.raw = json::object();
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> synth_preset_names() { return {"paper-counts", "bench", "interp", "small"}; }

SynthConfig synth_preset(std::string_view name) {
  SynthConfig c;
  c.preset = std::string(name);
  if (name == "paper-counts") {
    // 1934 qubit-claws, 693 quarter-wave, 406 half-wave, 430 couplers. Ten
    // claw geometries are shared between qubits and resonators; the rest of
    // the qubit-claws have no resonator partner.
    c.layout = SynthLayout::random;
    c.couplers = 430;
    c.reference_devices = true;
    const std::size_t half_small[] = {34, 33, 33};
    for (std::size_t i = 0; i < 3; ++i) c.groups.push_back({40.0 + 10.0 * i, 28, 82, half_small[i]});
    for (std::size_t i = 0; i < 7; ++i) {
      c.groups.push_back({70.0 + 10.0 * i, 27, i < 6 ? 64u : 63u, i < 5 ? 44u : 43u});
    }
    const std::size_t matched = 3 * 28 + 7 * 27;
    const std::size_t rest = 1934 - matched;
    const std::size_t n_free = 11;
    for (std::size_t i = 0; i < n_free; ++i) {
      const std::size_t n = rest / n_free + (i < rest % n_free ? 1 : 0);
      c.groups.push_back({45.0 + 10.0 * i, n, 0, 0});
    }
  } else if (name == "bench") {
    // 1000 qubits x 400 half-wave x 250 couplers in 20 groups: 5e6 designs.
    c.layout = SynthLayout::random;
    c.couplers = 250;
    for (std::size_t i = 0; i < 20; ++i) c.groups.push_back({40.0 + 6.0 * i, 50, 0, 20});
  } else if (name == "interp") {
    // Dense lattice of quarter-wave designs for interpolation.
    c.layout = SynthLayout::grid;
    for (std::size_t i = 0; i < 9; ++i) c.groups.push_back({40.0 + 15.0 * i, 11, 144, 0});
  } else if (name == "small") {
    c.layout = SynthLayout::grid;
    c.couplers = 3;
    c.reference_devices = true;
    for (std::size_t i = 0; i < 3; ++i) c.groups.push_back({60.0 + 20.0 * i, 4, 3, 2});
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown preset '" + std::string(name) + "'");
  }
  return c;
}

ComponentStore synth_generate(const SynthConfig& config, std::uint64_t seed) {
  check_range(config.cross_length, "cross_length");
  check_range(config.cpw_quarter, "cpw_quarter");
  check_range(config.cpw_half, "cpw_half");
  check_range(config.feedline_dim, "feedline_dim");
  check_range(config.finger_dim, "finger_dim");
  if (config.groups.empty() && config.couplers == 0 && !config.reference_devices) {
    throw Error(ErrorCode::invalid_argument, "synth config produces no records");
  }
  const SynthModel& m = config.model;
  Uniform rng(seed);

  std::vector<QubitClawEntry> qubits;
  std::vector<ResonatorEntry> resonators;
  std::vector<CouplerEntry> couplers;

  for (const auto& g : config.groups) {
    if (!(g.claw_length > 0.0)) throw Error(ErrorCode::invalid_argument, "claw_length must be > 0");
    for (std::size_t i = 0; i < g.qubits; ++i) {
      QubitClawEntry q;
      q.id = make_id("qc", qubits.size() + 1);
      q.geometry.cross_length =
          config.layout == SynthLayout::grid ? grid_point(config.cross_length, i, g.qubits) : rng(config.cross_length);
      q.geometry.claw_length = g.claw_length;
      q.geometry.claw_width = 10.0;
      q.geometry.gap = 5.0;
      q.cmatrix = {m.C_q(q.geometry.cross_length), m.C_c(g.claw_length)};
      q.sim_meta = synthetic_meta();
      q.provenance = synthetic_provenance();
      qubits.push_back(std::move(q));
    }
    auto add_resonators = [&](std::size_t n, ResonatorType type, CouplingKind kind, const Range& cpw) {
      for (const auto& [len, dim] : layout_2d(n, cpw, config.feedline_dim, config.layout, rng)) {
        ResonatorEntry r;
        r.id = make_id("res", resonators.size() + 1);
        r.res_type = type;
        r.coupling_kind = kind;
        r.geometry = {len, g.claw_length, dim};
        r.results.f_bare = m.f_bare(len, g.claw_length, dim, type, kind);
        if (kind == CouplingKind::distributed) {
          r.results.kappa = m.kappa_distributed(r.results.f_bare, dim, type);
        } else {
          r.results.C_rf = m.C_rf_lumped(dim);
          r.results.C_cg = m.C_cg_lumped(dim);
        }
        r.Z_c = m.Z_c;
        r.sim_meta = synthetic_meta();
        r.provenance = synthetic_provenance();
        resonators.push_back(std::move(r));
      }
    };
    add_resonators(g.quarter, ResonatorType::quarter, CouplingKind::distributed, config.cpw_quarter);
    add_resonators(g.half, ResonatorType::half, CouplingKind::lumped, config.cpw_half);
  }
  for (std::size_t i = 0; i < config.couplers; ++i) {
    CouplerEntry c;
    c.id = make_id("cpl", i + 1);
    c.geometry.finger_dim = config.layout == SynthLayout::grid ? grid_point(config.finger_dim, i, config.couplers)
                                                               : rng(config.finger_dim);
    c.cmatrix = {m.C_rf_coupler(c.geometry.finger_dim), m.C_cg_coupler(c.geometry.finger_dim)};
    c.sim_meta = synthetic_meta();
    c.provenance = synthetic_provenance();
    couplers.push_back(std::move(c));
  }

  std::vector<ValidatedDeviceEntry> validated;
  if (config.reference_devices) validated = reference_devices();

  json manifest = {{"generator", {{"model", m.to_json()}, {"preset", config.preset}, {"seed", seed}}}};
  return ComponentStore(std::move(qubits), std::move(resonators), std::move(couplers), std::move(validated),
                        std::move(manifest));
}

HamiltonianParams ground_truth(const SynthModel& model, const SynthGeometry& geometry, double E_J,
                               ResonatorType type) {
  const auto q = qubit_circuit(model.C_q(geometry.cross_length), model.C_c(geometry.claw_length), E_J);
  const double f = model.f_bare(geometry.cpw_length, geometry.claw_length, geometry.feedline_dim, type,
                                CouplingKind::distributed);
  const double kappa = model.kappa_distributed(f, geometry.feedline_dim, type);
  const auto r = distributed_circuit(f, kappa, resonator_capacitance(f, model.Z_c, type));
  return hamiltonian(q, r, E_J);
}

}  // namespace cqd::db
