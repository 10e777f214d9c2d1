#include "cqd/records.hpp"

#include <cmath>

#include "cqd/constants.hpp"
#include "cqd/error.hpp"
#include "cqd/shifts.hpp"

namespace cqd::db {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::schema, std::string("expected object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::schema, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorCode::schema, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw Error(ErrorCode::schema, std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorCode::schema, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_text(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::schema, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

SimMeta sim_meta_from(const json& j) {
  const auto& s = field(j, "sim_meta");
  SimMeta m;
  m.solver = text(s, "solver");
  m.mesh_max = number(s, "mesh_max");
  m.conv_tol = number(s, "conv_tol");
  const auto& passes = field(s, "min_passes");
  if (!passes.is_number_integer()) throw Error(ErrorCode::schema, "field 'min_passes' must be an integer");
  m.min_passes = passes.get<int>();
  return m;
}

Provenance provenance_from(const json& j) {
  const auto& p = field(j, "provenance");
  const auto& v = field(p, "validated");
  if (!v.is_boolean()) throw Error(ErrorCode::schema, "field 'validated' must be a boolean");
  return {v.get<bool>(), text(p, "reference")};
}

void write_sim_meta(json& j, const SimMeta& m) {
  auto& s = j["sim_meta"];
  s["solver"] = m.solver;
  s["mesh_max"] = m.mesh_max;
  s["conv_tol"] = m.conv_tol;
  s["min_passes"] = m.min_passes;
}

void write_provenance(json& j, const Provenance& p) {
  auto& o = j["provenance"];
  o["validated"] = p.validated;
  o["reference"] = p.reference;
}

void check_sim_meta(const SimMeta& m, std::vector<std::string>& out) {
  if (!(m.conv_tol > 0.0)) out.emplace_back("sim_meta.conv_tol must be > 0");
}

json base_object(const json& raw) { return raw.is_object() ? raw : json::object(); }

}  // namespace

HamiltonianParams ValidatedDeviceEntry::as_params() const {
  return {measured.f_01, units::ghz_from_mhz(measured.alpha), measured.f_res, measured.kappa,
          units::ghz_from_mhz(measured.g_extracted)};
}

std::vector<std::string> validate(const QubitClawEntry& e) {
  std::vector<std::string> out;
  if (e.id.empty()) out.emplace_back("id must be non-empty");
  if (!(e.cmatrix.C_q > 0.0)) out.emplace_back("C_q must be > 0");
  if (!(e.cmatrix.C_c > 0.0)) out.emplace_back("C_c must be > 0");
  if (!(e.cmatrix.C_c < e.cmatrix.C_q)) out.emplace_back("C_c must be < C_q");
  check_sim_meta(e.sim_meta, out);
  return out;
}

std::vector<std::string> validate(const ResonatorEntry& e) {
  std::vector<std::string> out;
  if (e.id.empty()) out.emplace_back("id must be non-empty");
  if (!(e.results.f_bare > 0.0)) out.emplace_back("f_bare must be > 0");
  if (!(e.Z_c > 0.0)) out.emplace_back("Z_c must be > 0");
  if (e.res_type == ResonatorType::quarter && e.coupling_kind != CouplingKind::distributed) {
    out.emplace_back("quarter-wave resonators must use distributed coupling");
  }
  if (e.coupling_kind == CouplingKind::distributed) {
    if (!e.results.kappa) out.emplace_back("distributed resonator requires results.kappa");
    else if (!(*e.results.kappa >= 0.0)) out.emplace_back("kappa must be >= 0");
    if (e.results.C_rf || e.results.C_cg) out.emplace_back("distributed resonator must not carry C_rf/C_cg");
  } else {
    if (!e.results.C_rf || !e.results.C_cg) out.emplace_back("lumped resonator requires results.C_rf and results.C_cg");
    else {
      if (!(*e.results.C_rf > 0.0)) out.emplace_back("C_rf must be > 0");
      if (!(*e.results.C_cg >= 0.0)) out.emplace_back("C_cg must be >= 0");
    }
    if (e.results.kappa) out.emplace_back("lumped resonator must not carry kappa");
  }
  check_sim_meta(e.sim_meta, out);
  return out;
}

std::vector<std::string> validate(const CouplerEntry& e) {
  std::vector<std::string> out;
  if (e.id.empty()) out.emplace_back("id must be non-empty");
  if (!(e.cmatrix.C_rf > 0.0)) out.emplace_back("C_rf must be > 0");
  if (!(e.cmatrix.C_cg >= 0.0)) out.emplace_back("C_cg must be >= 0");
  check_sim_meta(e.sim_meta, out);
  return out;
}

std::vector<std::string> validate(const ValidatedDeviceEntry& e) {
  std::vector<std::string> out;
  if (e.id.empty()) out.emplace_back("id must be non-empty");
  const auto& m = e.measured;
  if (!(m.f_01 > 0.0) || !(m.f_res > 0.0)) {
    out.emplace_back("f_01 and f_res must be > 0");
    return out;
  }
  try {
    const double g = units::mhz_from_ghz(
        physics::g_from_lamb(units::ghz_from_mhz(m.chi_L), m.f_01, m.f_res));
    if (std::abs(g - m.g_extracted) > 0.02 * std::abs(g)) {
      out.emplace_back("g_extracted " + std::to_string(m.g_extracted) + " MHz inconsistent with Lamb shift (" +
                       std::to_string(g) + " MHz)");
    }
  } catch (const Error& err) {
    out.emplace_back(std::string("Lamb shift inversion failed: ") + err.what());
  }
  return out;
}

QubitClawEntry qubit_from_json(const json& j) {
  QubitClawEntry e;
  e.id = text(j, "id");
  const auto& g = field(j, "geometry");
  e.geometry = {number(g, "cross_length"), number(g, "claw_length"), number(g, "claw_width"), number(g, "gap")};
  const auto& c = field(j, "cmatrix");
  e.cmatrix = {number(c, "C_q"), number(c, "C_c")};
  e.sim_meta = sim_meta_from(j);
  e.provenance = provenance_from(j);
  e.raw = j;
  return e;
}

ResonatorEntry resonator_from_json(const json& j) {
  ResonatorEntry e;
  e.id = text(j, "id");
  e.res_type = parse_resonator_type(text(j, "res_type"));
  e.coupling_kind = parse_coupling_kind(text(j, "coupling_kind"));
  const auto& g = field(j, "geometry");
  e.geometry = {number(g, "cpw_length"), number(g, "claw_length"), number(g, "feedline_coupling_dim")};
  const auto& r = field(j, "results");
  e.results.f_bare = number(r, "f_bare");
  e.results.kappa = optional_number(r, "kappa");
  e.results.C_rf = optional_number(r, "C_rf");
  e.results.C_cg = optional_number(r, "C_cg");
  e.Z_c = number(j, "Z_c");
  e.sim_meta = sim_meta_from(j);
  e.provenance = provenance_from(j);
  e.raw = j;
  return e;
}

CouplerEntry coupler_from_json(const json& j) {
  CouplerEntry e;
  e.id = text(j, "id");
  e.geometry.finger_dim = number(field(j, "geometry"), "finger_dim");
  const auto& c = field(j, "cmatrix");
  e.cmatrix = {number(c, "C_rf"), number(c, "C_cg")};
  e.sim_meta = sim_meta_from(j);
  e.provenance = provenance_from(j);
  e.raw = j;
  return e;
}

ValidatedDeviceEntry validated_from_json(const json& j) {
  ValidatedDeviceEntry e;
  e.id = text(j, "id");
  const auto& m = field(j, "measured");
  e.measured = {number(m, "f_01"), number(m, "alpha"), number(m, "f_res"),
                number(m, "kappa"), number(m, "chi_L"), number(m, "g_extracted")};
  if (const auto it = j.find("linked"); it != j.end() && !it->is_null()) {
    e.linked.qubit_id = optional_text(*it, "qubit_id");
    e.linked.resonator_id = optional_text(*it, "resonator_id");
    e.linked.coupler_id = optional_text(*it, "coupler_id");
  }
  e.raw = j;
  return e;
}

json to_json(const QubitClawEntry& e) {
  json j = base_object(e.raw);
  j["id"] = e.id;
  auto& g = j["geometry"];
  g["cross_length"] = e.geometry.cross_length;
  g["claw_length"] = e.geometry.claw_length;
  g["claw_width"] = e.geometry.claw_width;
  g["gap"] = e.geometry.gap;
  auto& c = j["cmatrix"];
  c["C_q"] = e.cmatrix.C_q;
  c["C_c"] = e.cmatrix.C_c;
  write_sim_meta(j, e.sim_meta);
  write_provenance(j, e.provenance);
  return j;
}

json to_json(const ResonatorEntry& e) {
  json j = base_object(e.raw);
  j["id"] = e.id;
  j["res_type"] = std::string(to_string(e.res_type));
  j["coupling_kind"] = std::string(to_string(e.coupling_kind));
  auto& g = j["geometry"];
  g["cpw_length"] = e.geometry.cpw_length;
  g["claw_length"] = e.geometry.claw_length;
  g["feedline_coupling_dim"] = e.geometry.feedline_coupling_dim;
  auto& r = j["results"];
  r["f_bare"] = e.results.f_bare;
  auto put = [&r](const char* key, const std::optional<double>& v) {
    if (v) r[key] = *v;
    else r.erase(key);
  };
  put("kappa", e.results.kappa);
  put("C_rf", e.results.C_rf);
  put("C_cg", e.results.C_cg);
  j["Z_c"] = e.Z_c;
  write_sim_meta(j, e.sim_meta);
  write_provenance(j, e.provenance);
  return j;
}

json to_json(const CouplerEntry& e) {
  json j = base_object(e.raw);
  j["id"] = e.id;
  j["geometry"]["finger_dim"] = e.geometry.finger_dim;
  auto& c = j["cmatrix"];
  c["C_rf"] = e.cmatrix.C_rf;
  c["C_cg"] = e.cmatrix.C_cg;
  write_sim_meta(j, e.sim_meta);
  write_provenance(j, e.provenance);
  return j;
}

json to_json(const ValidatedDeviceEntry& e) {
  json j = base_object(e.raw);
  j["id"] = e.id;
  auto& m = j["measured"];
  m["f_01"] = e.measured.f_01;
  m["alpha"] = e.measured.alpha;
  m["f_res"] = e.measured.f_res;
  m["kappa"] = e.measured.kappa;
  m["chi_L"] = e.measured.chi_L;
  m["g_extracted"] = e.measured.g_extracted;
  if (e.linked.qubit_id || e.linked.resonator_id || e.linked.coupler_id) {
    auto& l = j["linked"];
    if (e.linked.qubit_id) l["qubit_id"] = *e.linked.qubit_id;
    if (e.linked.resonator_id) l["resonator_id"] = *e.linked.resonator_id;
    if (e.linked.coupler_id) l["coupler_id"] = *e.linked.coupler_id;
  }
  return j;
}

}  // namespace cqd::db
