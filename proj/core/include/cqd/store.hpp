#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cqd/records.hpp"

namespace cqd::db {

inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kQubitFile = "qubit_claw.jsonl";
inline constexpr const char* kResonatorFile = "resonator.jsonl";
inline constexpr const char* kCouplerFile = "coupler.jsonl";
inline constexpr const char* kValidatedFile = "validated.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";

// Entries sharing one claw_length value.
struct ClawGroup {
  double claw_length = 0.0;
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> resonators;
};

// Immutable after construction. Safe to share across threads.
class ComponentStore {
 public:
  ComponentStore() = default;

  // Throws Error(duplicate_id) when an id repeats within a collection.
  // Records are taken as given; validation is the loader's job.
  ComponentStore(std::vector<QubitClawEntry> qubits, std::vector<ResonatorEntry> resonators,
                 std::vector<CouplerEntry> couplers, std::vector<ValidatedDeviceEntry> validated,
                 nlohmann::json manifest = nlohmann::json::object());

  const std::vector<QubitClawEntry>& qubits() const { return qubits_; }
  const std::vector<ResonatorEntry>& resonators() const { return resonators_; }
  const std::vector<CouplerEntry>& couplers() const { return couplers_; }
  const std::vector<ValidatedDeviceEntry>& validated() const { return validated_; }

  int schema_version() const { return kSchemaVersion; }
  // Manifest contents besides schema_version (e.g. generator coefficients).
  const nlohmann::json& manifest() const { return manifest_; }

  // Claw groups ordered by claw_length. Every group holds at least one entry.
  const std::vector<ClawGroup>& claw_groups() const { return groups_; }
  // Group position for an exact claw_length, or -1.
  long find_group(double claw_length) const;

  bool empty() const {
    return qubits_.empty() && resonators_.empty() && couplers_.empty() && validated_.empty();
  }

 private:
  std::vector<QubitClawEntry> qubits_;
  std::vector<ResonatorEntry> resonators_;
  std::vector<CouplerEntry> couplers_;
  std::vector<ValidatedDeviceEntry> validated_;
  nlohmann::json manifest_ = nlohmann::json::object();
  std::vector<ClawGroup> groups_;
  std::map<double, std::size_t> group_of_;
};

struct RecordIssue {
  std::string file;
  std::size_t line = 0;  // 1-based
  std::string id;        // empty when the record did not parse far enough
  std::vector<std::string> violations;
};

struct LoadResult {
  ComponentStore store;
  std::vector<RecordIssue> issues;
};

// Reads the record files under `dir`. Missing record files mean empty
// collections. Malformed or invalid records are reported and dropped.
// Throws Error(io) when the directory or a file cannot be read,
// Error(schema) on a schema_version mismatch or a corrupt manifest, and
// Error(duplicate_id) on repeated ids.
LoadResult load_components(const std::filesystem::path& dir);

// Writes all collections plus manifest.json into `dir` (created if needed).
void write_components(const ComponentStore& store, const std::filesystem::path& dir);

struct StoreStats {
  std::size_t qubits = 0;
  std::size_t resonators = 0;
  std::size_t quarter_wave = 0;
  std::size_t half_wave = 0;
  std::size_t distributed = 0;
  std::size_t lumped = 0;
  std::size_t couplers = 0;
  std::size_t validated = 0;
  std::size_t claw_groups = 0;
  // Lumped resonators times couplers (each lumped resonator alone when the
  // store holds no couplers), plus distributed resonators.
  std::size_t lumped_combinations = 0;
  std::size_t resonator_combinations = 0;
  // Qubit x resonator(x coupler) designs at claw tolerance 0.
  std::size_t composed = 0;
};

// Counts by index arithmetic; nothing is enumerated.
StoreStats store_stats(const ComponentStore& store);

nlohmann::json to_json(const StoreStats& stats);

}  // namespace cqd::db
