#include "cqd/store.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cqd/error.hpp"

namespace cqd::db {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename Entry>
void check_unique(const std::vector<Entry>& entries, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.id).second) {
      throw Error(ErrorCode::duplicate_id, std::string("duplicate ") + what + " id '" + e.id + "'");
    }
  }
}

template <typename Entry, typename Parse>
std::vector<Entry> read_jsonl(const fs::path& file, Parse parse, std::vector<RecordIssue>& issues) {
  std::vector<Entry> out;
  if (!fs::exists(file)) return out;
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::io, "cannot read " + file.string());
  const std::string name = file.filename().string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RecordIssue issue{name, lineno, {}, {}};
    try {
      const json j = json::parse(line);
      if (j.is_object()) {
        if (auto it = j.find("id"); it != j.end() && it->is_string()) issue.id = it->get<std::string>();
      }
      Entry e = parse(j);
      auto violations = validate(e);
      if (violations.empty()) {
        out.push_back(std::move(e));
        continue;
      }
      issue.violations = std::move(violations);
    } catch (const json::parse_error& err) {
      issue.violations.emplace_back(std::string("invalid JSON: ") + err.what());
    } catch (const Error& err) {
      issue.violations.emplace_back(err.what());
    }
    issues.push_back(std::move(issue));
  }
  if (in.bad()) throw Error(ErrorCode::io, "error reading " + file.string());
  return out;
}

template <typename Entry>
void write_jsonl(const fs::path& file, const std::vector<Entry>& entries) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + file.string());
  for (const auto& e : entries) out << to_json(e).dump() << '\n';
  if (!out) throw Error(ErrorCode::io, "error writing " + file.string());
}

}  // namespace

ComponentStore::ComponentStore(std::vector<QubitClawEntry> qubits,
                               std::vector<ResonatorEntry> resonators,
                               std::vector<CouplerEntry> couplers,
                               std::vector<ValidatedDeviceEntry> validated, json manifest)
    : qubits_(std::move(qubits)),
      resonators_(std::move(resonators)),
      couplers_(std::move(couplers)),
      validated_(std::move(validated)),
      manifest_(manifest.is_object() ? std::move(manifest) : json::object()) {
  check_unique(qubits_, "qubit_claw");
  check_unique(resonators_, "resonator");
  check_unique(couplers_, "coupler");
  check_unique(validated_, "validated");
  manifest_.erase("schema_version");

  std::map<double, ClawGroup> groups;
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const double key = qubits_[i].geometry.claw_length;
    auto& g = groups[key];
    g.claw_length = key;
    g.qubits.push_back(i);
  }
  for (std::size_t i = 0; i < resonators_.size(); ++i) {
    const double key = resonators_[i].geometry.claw_length;
    auto& g = groups[key];
    g.claw_length = key;
    g.resonators.push_back(i);
  }
  groups_.reserve(groups.size());
  for (auto& [key, g] : groups) {
    group_of_.emplace(key, groups_.size());
    groups_.push_back(std::move(g));
  }
}

long ComponentStore::find_group(double claw_length) const {
  const auto it = group_of_.find(claw_length);
  return it == group_of_.end() ? -1 : static_cast<long>(it->second);
}

LoadResult load_components(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::io, "not a readable directory: " + dir.string());

  json manifest = json::object();
  const fs::path manifest_path = dir / kManifestFile;
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    if (!in) throw Error(ErrorCode::io, "cannot read " + manifest_path.string());
    try {
      manifest = json::parse(in);
    } catch (const json::parse_error& err) {
      throw Error(ErrorCode::schema, std::string("corrupt manifest: ") + err.what());
    }
    if (!manifest.is_object()) throw Error(ErrorCode::schema, "manifest must be a JSON object");
    const auto it = manifest.find("schema_version");
    if (it == manifest.end() || !it->is_number_integer()) {
      throw Error(ErrorCode::schema, "manifest lacks an integer schema_version");
    }
    if (it->get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::schema, "schema_version " + std::to_string(it->get<int>()) +
                                         " not supported (expected " + std::to_string(kSchemaVersion) + ")");
    }
  }

  LoadResult result;
  auto qubits = read_jsonl<QubitClawEntry>(dir / kQubitFile, qubit_from_json, result.issues);
  auto resonators = read_jsonl<ResonatorEntry>(dir / kResonatorFile, resonator_from_json, result.issues);
  auto couplers = read_jsonl<CouplerEntry>(dir / kCouplerFile, coupler_from_json, result.issues);
  auto validated = read_jsonl<ValidatedDeviceEntry>(dir / kValidatedFile, validated_from_json, result.issues);
  result.store = ComponentStore(std::move(qubits), std::move(resonators), std::move(couplers),
                                std::move(validated), std::move(manifest));
  return result;
}

void write_components(const ComponentStore& store, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  write_jsonl(dir / kQubitFile, store.qubits());
  write_jsonl(dir / kResonatorFile, store.resonators());
  write_jsonl(dir / kCouplerFile, store.couplers());
  write_jsonl(dir / kValidatedFile, store.validated());

  json manifest = store.manifest();
  manifest["schema_version"] = kSchemaVersion;
  std::ofstream out(dir / kManifestFile, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

StoreStats store_stats(const ComponentStore& store) {
  StoreStats s;
  s.qubits = store.qubits().size();
  s.resonators = store.resonators().size();
  s.couplers = store.couplers().size();
  s.validated = store.validated().size();
  s.claw_groups = store.claw_groups().size();
  for (const auto& r : store.resonators()) {
    (r.res_type == ResonatorType::quarter ? s.quarter_wave : s.half_wave) += 1;
    (r.coupling_kind == CouplingKind::distributed ? s.distributed : s.lumped) += 1;
  }
  const std::size_t per_lumped = std::max<std::size_t>(1, s.couplers);
  s.lumped_combinations = s.lumped * per_lumped;
  s.resonator_combinations = s.distributed + s.lumped_combinations;

  for (const auto& g : store.claw_groups()) {
    std::size_t dist = 0;
    std::size_t lump = 0;
    for (const auto idx : g.resonators) {
      (store.resonators()[idx].coupling_kind == CouplingKind::distributed ? dist : lump) += 1;
    }
    s.composed += g.qubits.size() * (dist + lump * per_lumped);
  }
  return s;
}

json to_json(const StoreStats& s) {
  return json{{"qubits", s.qubits},
              {"resonators", s.resonators},
              {"quarter_wave", s.quarter_wave},
              {"half_wave", s.half_wave},
              {"distributed", s.distributed},
              {"lumped", s.lumped},
              {"couplers", s.couplers},
              {"validated", s.validated},
              {"claw_groups", s.claw_groups},
              {"lumped_combinations", s.lumped_combinations},
              {"resonator_combinations", s.resonator_combinations},
              {"composed", s.composed}};
}

}  // namespace cqd::db
