#pragma once

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cqd/store.hpp"
#include "cqd/target.hpp"

namespace cqd::query {

struct SearchOptions {
  std::size_t k = 10;
  unsigned threads = 1;
  double claw_tolerance = 0.0;
  double Z_0 = 50.0;            // feedline impedance, ohm
  std::optional<double> E_J;    // GHz; derived from the f_q/alpha target when empty
};

struct RankedDesign {
  std::string qubit_id;
  std::string resonator_id;
  std::optional<std::string> coupler_id;
  HamiltonianParams params;
  double E_J = 0.0;
  double cost = 0.0;
};

// The two candidates closest to the target in a single term.
struct TermClosest {
  Term term = Term::f_q;
  double target = 0.0;
  std::vector<RankedDesign> designs;  // closest first, at most 2
  std::vector<double> abs_error;      // |P - p| per design
};

struct ValidatedMatch {
  std::string id;
  HamiltonianParams measured;  // GHz, kappa in MHz
  double cost = 0.0;
};

struct SearchStats {
  std::size_t candidates_scanned = 0;
  std::size_t skipped = 0;
  std::size_t validated_scanned = 0;
  unsigned threads = 1;
  double wall_time_s = 0.0;
};

struct QueryResult {
  TargetSpec target;
  std::optional<double> E_J;  // absent when the store holds no qubits
  std::optional<double> E_C;  // target charging energy when E_J was derived
  std::vector<RankedDesign> ranked;  // ascending cost, ties by ids
  std::vector<TermClosest> closest_per_term;
  std::optional<ValidatedMatch> closest_validated;
  SearchStats stats;
};

// Exact top-k over all composed candidates with a bounded heap per worker;
// workers own contiguous qubit ranges and their partial results are merged
// under one total order, so the result does not depend on `threads`.
// Throws Error(empty_store) when there is nothing to search,
// Error(infeasible_target) when E_J cannot be derived from the target, and
// Error(invalid_argument) on a bad spec or options.
QueryResult top_k_search(const db::ComponentStore& store, const TargetSpec& target, const SearchOptions& options);

// Timing is opt-in so that repeated runs serialize byte-identically.
nlohmann::json to_json(const QueryResult& result, bool include_timing = false);
nlohmann::json to_json(const RankedDesign& design);
nlohmann::json to_json(const HamiltonianParams& params);

}  // namespace cqd::query
