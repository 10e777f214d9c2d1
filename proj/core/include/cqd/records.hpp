#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cqd/types.hpp"

namespace cqd::db {

struct SimMeta {
  std::string solver;
  double mesh_max = 0.0;  // um
  double conv_tol = 0.0;  // percent
  int min_passes = 0;
};

struct Provenance {
  bool validated = false;
  std::string reference;
};

struct QubitClawEntry {
  std::string id;
  struct Geometry {
    double cross_length = 0.0;  // um
    double claw_length = 0.0;
    double claw_width = 0.0;
    double gap = 0.0;
  } geometry;
  struct CMatrix {
    double C_q = 0.0;  // fF
    double C_c = 0.0;
  } cmatrix;
  SimMeta sim_meta;
  Provenance provenance;
  nlohmann::json raw = nlohmann::json::object();  // as read; unknown fields survive rewrite
};

struct ResonatorEntry {
  std::string id;
  ResonatorType res_type = ResonatorType::quarter;
  CouplingKind coupling_kind = CouplingKind::distributed;
  struct Geometry {
    double cpw_length = 0.0;  // um
    double claw_length = 0.0;
    double feedline_coupling_dim = 0.0;
  } geometry;
  struct Results {
    double f_bare = 0.0;          // GHz
    std::optional<double> kappa;  // MHz, distributed only
    std::optional<double> C_rf;   // fF, lumped only
    std::optional<double> C_cg;   // fF, lumped only
  } results;
  double Z_c = 50.0;  // ohm
  SimMeta sim_meta;
  Provenance provenance;
  nlohmann::json raw = nlohmann::json::object();
};

struct CouplerEntry {
  std::string id;
  struct Geometry {
    double finger_dim = 0.0;  // um
  } geometry;
  struct CMatrix {
    double C_rf = 0.0;  // fF
    double C_cg = 0.0;
  } cmatrix;
  SimMeta sim_meta;
  Provenance provenance;
  nlohmann::json raw = nlohmann::json::object();
};

struct ValidatedDeviceEntry {
  std::string id;
  struct Measured {
    double f_01 = 0.0;         // GHz
    double alpha = 0.0;        // MHz
    double f_res = 0.0;        // GHz
    double kappa = 0.0;        // MHz
    double chi_L = 0.0;        // MHz
    double g_extracted = 0.0;  // MHz
  } measured;
  struct Linked {
    std::optional<std::string> qubit_id;
    std::optional<std::string> resonator_id;
    std::optional<std::string> coupler_id;
  } linked;
  nlohmann::json raw = nlohmann::json::object();

  // Measured values as Hamiltonian parameters (GHz, kappa in MHz).
  HamiltonianParams as_params() const;
};

// Invariant checks. Each returns the list of violations (empty when valid).
std::vector<std::string> validate(const QubitClawEntry& e);
std::vector<std::string> validate(const ResonatorEntry& e);
std::vector<std::string> validate(const CouplerEntry& e);
// Includes g_extracted vs g_from_lamb(chi_L, f_01, f_res) within 2%.
std::vector<std::string> validate(const ValidatedDeviceEntry& e);

// JSON conversion. Parsing throws Error(schema) on missing or mistyped fields;
// serialization starts from `raw` so fields this version does not know about
// are preserved.
QubitClawEntry qubit_from_json(const nlohmann::json& j);
ResonatorEntry resonator_from_json(const nlohmann::json& j);
CouplerEntry coupler_from_json(const nlohmann::json& j);
ValidatedDeviceEntry validated_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QubitClawEntry& e);
nlohmann::json to_json(const ResonatorEntry& e);
nlohmann::json to_json(const CouplerEntry& e);
nlohmann::json to_json(const ValidatedDeviceEntry& e);

}  // namespace cqd::db
