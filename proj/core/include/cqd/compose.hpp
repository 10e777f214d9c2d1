#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cqd/store.hpp"
#include "cqd/transmon.hpp"
#include "cqd/types.hpp"

namespace cqd::db {

inline constexpr std::size_t kNoCoupler = std::numeric_limits<std::size_t>::max();

// Circuit-to-Hamiltonian pipeline shared by composition and interpolation.

struct QubitCircuit {
  double C_sigma = 0.0;  // C_q + C_c, fF
  double C_c = 0.0;      // fF
  double E_C = 0.0;      // GHz
  physics::TransmonSpectrum spectrum;
};

struct ResonatorCircuit {
  double f_r = 0.0;    // GHz, as seen by the qubit
  double kappa = 0.0;  // MHz
  double C_r = 0.0;    // fF
};

// E_C from the total island capacitance, exact transmon spectrum at E_J.
QubitCircuit qubit_circuit(double C_q, double C_c, double E_J);

// Bare resonator capacitance from its frequency and line impedance.
double resonator_capacitance(double f_bare, double Z_c, ResonatorType type);

// Distributed coupling: frequency and linewidth as simulated.
ResonatorCircuit distributed_circuit(double f_bare, double kappa, double C_r);
// Lumped coupling: loaded by C_rf and C_cg into a Z_0 feedline.
ResonatorCircuit lumped_circuit(double f_bare, double C_r, double C_rf, double C_cg, double Z_0);

HamiltonianParams hamiltonian(const QubitCircuit& q, const ResonatorCircuit& r, double E_J);

struct ComposeOptions {
  double E_J = 0.0;             // GHz
  double claw_tolerance = 0.0;  // relative, [0, 1)
  double Z_0 = 50.0;            // feedline impedance, ohm
};

// One qubit x resonator (x coupler) combination. Ids view into the store.
struct CandidateDesign {
  std::size_t qubit = 0;
  std::size_t resonator = 0;
  std::size_t coupler = kNoCoupler;
  std::string_view qubit_id;
  std::string_view resonator_id;
  std::string_view coupler_id;  // empty when no coupler
  HamiltonianParams params;
  double E_J = 0.0;
  double cost = 0.0;
};

struct ComposeCounts {
  std::size_t produced = 0;
  std::size_t skipped = 0;  // candidates whose physics failed
};

// Lazily enumerates candidates. Per-qubit and per-resonator quantities are
// computed once up front; candidates are produced on the fly and never
// stored. Safe to call for_each concurrently on disjoint qubit ranges.
class CandidateComposer {
 public:
  CandidateComposer(const ComponentStore& store, ComposeOptions options);

  const ComponentStore& store() const { return *store_; }
  const ComposeOptions& options() const { return options_; }
  std::size_t qubit_count() const { return store_->qubits().size(); }

  // Number of candidates (produced or skipped) stemming from qubit i.
  std::size_t candidates_for_qubit(std::size_t i) const;

  // Calls sink(const CandidateDesign&) for every valid candidate whose
  // qubit index lies in [begin, end), in a fixed order.
  template <typename Sink>
  ComposeCounts for_each(std::size_t begin, std::size_t end, Sink&& sink) const;

  template <typename Sink>
  ComposeCounts for_each(Sink&& sink) const {
    return for_each(0, qubit_count(), std::forward<Sink>(sink));
  }

  // Reason the physics failed for qubit i / resonator j (empty when fine).
  const std::string& qubit_error(std::size_t i) const { return qubits_[i].error; }
  const std::string& resonator_error(std::size_t j) const { return resonators_[j].error; }

 private:
  struct QubitState {
    bool ok = false;
    QubitCircuit circuit;
    std::string error;
  };
  struct ResonatorState {
    bool ok = false;
    double C_r = 0.0;
    std::string error;
  };

  bool make(std::size_t qi, std::size_t ri, std::size_t ci, CandidateDesign& out) const;

  const ComponentStore* store_;
  ComposeOptions options_;
  std::vector<QubitState> qubits_;
  std::vector<ResonatorState> resonators_;
  // For each qubit, the claw groups whose resonators it pairs with.
  std::vector<std::vector<std::size_t>> matches_;
};

template <typename Sink>
ComposeCounts CandidateComposer::for_each(std::size_t begin, std::size_t end, Sink&& sink) const {
  ComposeCounts counts;
  const auto& groups = store_->claw_groups();
  const auto& resonators = store_->resonators();
  const std::size_t n_couplers = store_->couplers().size();
  CandidateDesign c;
  for (std::size_t qi = begin; qi < end && qi < qubit_count(); ++qi) {
    for (const std::size_t gi : matches_[qi]) {
      for (const std::size_t ri : groups[gi].resonators) {
        if (resonators[ri].coupling_kind == CouplingKind::lumped && n_couplers > 0) {
          for (std::size_t ci = 0; ci < n_couplers; ++ci) {
            if (make(qi, ri, ci, c)) {
              ++counts.produced;
              sink(static_cast<const CandidateDesign&>(c));
            } else {
              ++counts.skipped;
            }
          }
        } else if (make(qi, ri, kNoCoupler, c)) {
          ++counts.produced;
          sink(static_cast<const CandidateDesign&>(c));
        } else {
          ++counts.skipped;
        }
      }
    }
  }
  return counts;
}

// Every qubit-resonator pairing under claw_tolerance, counted by walking the
// index without evaluating physics. Used to cross-check store_stats.
std::size_t enumerate_count(const ComponentStore& store, double claw_tolerance);

// True when two claw lengths match under a relative tolerance.
bool claw_match(double a, double b, double tolerance);

}  // namespace cqd::db
