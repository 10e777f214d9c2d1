#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>

#include "cqd/error.hpp"
#include "cqd/records.hpp"
#include "cqd/store.hpp"
#include "cqd/synth.hpp"

using namespace cqd;
using namespace cqd::db;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("cqd_store_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

json qubit_json(const std::string& id, double claw) {
  return {{"id", id},
          {"geometry", {{"cross_length", 200.0}, {"claw_length", claw}, {"claw_width", 10.0}, {"gap", 5.0}}},
          {"cmatrix", {{"C_q", 80.0}, {"C_c", 5.0}}},
          {"sim_meta", {{"solver", "synthetic"}, {"mesh_max", 20.0}, {"conv_tol", 0.1}, {"min_passes", 10}}},
          {"provenance", {{"validated", false}, {"reference", "test"}}}};
}

void write_lines(const fs::path& file, const std::vector<std::string>& lines) {
  std::ofstream out(file);
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST(Records, QubitRoundTripKeepsUnknownFields) {
  json j = qubit_json("qc-1", 60.0);
  j["extra"] = {{"note", "kept"}};
  const auto e = qubit_from_json(j);
  EXPECT_EQ(e.id, "qc-1");
  EXPECT_DOUBLE_EQ(e.cmatrix.C_q, 80.0);
  const json back = to_json(e);
  EXPECT_EQ(back.at("extra").at("note"), "kept");
  EXPECT_EQ(qubit_from_json(back).geometry.claw_length, 60.0);
}

TEST(Records, MissingFieldIsSchemaError) {
  json j = qubit_json("qc-1", 60.0);
  j.erase("cmatrix");
  try {
    qubit_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::schema);
  }
  j = qubit_json("qc-1", 60.0);
  j["cmatrix"]["C_q"] = "eighty";
  EXPECT_THROW(qubit_from_json(j), Error);
}

TEST(Records, ValidationFlagsNonPhysicalValues) {
  auto e = qubit_from_json(qubit_json("qc-1", 60.0));
  EXPECT_TRUE(validate(e).empty());
  e.cmatrix.C_c = -1.0;
  EXPECT_FALSE(validate(e).empty());
}

TEST(Records, ReferenceDevicesAreConsistent) {
  for (const auto& d : reference_devices()) {
    EXPECT_TRUE(validate(d).empty()) << d.id;
    const auto p = d.as_params();
    EXPECT_NEAR(p.alpha, d.measured.alpha * 1e-3, 1e-15);
    EXPECT_NEAR(p.kappa, d.measured.kappa, 1e-15);
  }
}

TEST(Records, ValidatedDeviceWithInconsistentLambShiftIsFlagged) {
  auto d = reference_devices().front();
  d.measured.g_extracted *= 1.1;
  EXPECT_FALSE(validate(d).empty());
}

TEST(Records, ResonatorKindSpecificFields) {
  const auto store = synth_generate(synth_preset("small"), 1);
  for (const auto& r : store.resonators()) {
    EXPECT_TRUE(validate(r).empty()) << r.id;
    const auto back = resonator_from_json(to_json(r));
    EXPECT_EQ(back.res_type, r.res_type);
    EXPECT_EQ(back.coupling_kind, r.coupling_kind);
    EXPECT_EQ(back.results.kappa.has_value(), r.coupling_kind == CouplingKind::distributed);
    EXPECT_EQ(back.results.C_rf.has_value(), r.coupling_kind == CouplingKind::lumped);
  }
}

TEST(Store, DuplicateIdsRejected) {
  const auto q = qubit_from_json(qubit_json("qc-1", 60.0));
  try {
    ComponentStore s({q, q}, {}, {}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::duplicate_id);
  }
}

TEST(Store, ClawGroupsSortedAndComplete) {
  const auto store = synth_generate(synth_preset("small"), 3);
  const auto& groups = store.claw_groups();
  ASSERT_EQ(groups.size(), 3u);
  std::size_t q = 0, r = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i > 0) {
      EXPECT_LT(groups[i - 1].claw_length, groups[i].claw_length);
    }
    EXPECT_EQ(store.find_group(groups[i].claw_length), static_cast<long>(i));
    q += groups[i].qubits.size();
    r += groups[i].resonators.size();
  }
  EXPECT_EQ(q, store.qubits().size());
  EXPECT_EQ(r, store.resonators().size());
  EXPECT_EQ(store.find_group(61.5), -1);
}

TEST(Store, WriteLoadRoundTrip) {
  TempDir dir;
  const auto store = synth_generate(synth_preset("small"), 9);
  write_components(store, dir.path());
  const auto loaded = load_components(dir.path());
  EXPECT_TRUE(loaded.issues.empty());
  ASSERT_EQ(loaded.store.qubits().size(), store.qubits().size());
  ASSERT_EQ(loaded.store.resonators().size(), store.resonators().size());
  EXPECT_EQ(loaded.store.couplers().size(), store.couplers().size());
  EXPECT_EQ(loaded.store.validated().size(), store.validated().size());
  for (std::size_t i = 0; i < store.resonators().size(); ++i) {
    EXPECT_EQ(loaded.store.resonators()[i].results.f_bare, store.resonators()[i].results.f_bare);
  }
  EXPECT_EQ(loaded.store.manifest().at("generator").at("preset"), "small");
  EXPECT_FALSE(loaded.store.manifest().contains("schema_version"));
}

TEST(Store, MissingFilesMeanEmptyCollections) {
  TempDir dir;
  write_lines(dir.path() / kQubitFile, {qubit_json("qc-1", 60.0).dump()});
  const auto loaded = load_components(dir.path());
  EXPECT_EQ(loaded.store.qubits().size(), 1u);
  EXPECT_TRUE(loaded.store.resonators().empty());
}

TEST(Store, BadRecordsReportedWithLineNumbers) {
  TempDir dir;
  json bad = qubit_json("qc-2", 60.0);
  bad["cmatrix"]["C_q"] = -5.0;
  write_lines(dir.path() / kQubitFile, {qubit_json("qc-1", 60.0).dump(), "{not json", bad.dump(), ""});
  const auto loaded = load_components(dir.path());
  EXPECT_EQ(loaded.store.qubits().size(), 1u);
  ASSERT_EQ(loaded.issues.size(), 2u);
  EXPECT_EQ(loaded.issues[0].line, 2u);
  EXPECT_EQ(loaded.issues[1].line, 3u);
  EXPECT_EQ(loaded.issues[1].id, "qc-2");
}

TEST(Store, SchemaVersionMismatch) {
  TempDir dir;
  std::ofstream(dir.path() / kManifestFile) << R"({"schema_version": 99})";
  try {
    load_components(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::schema);
  }
  std::ofstream(dir.path() / kManifestFile) << "{broken";
  EXPECT_THROW(load_components(dir.path()), Error);
}

TEST(Store, MissingDirectoryIsIoError) {
  try {
    load_components("/nonexistent/cqd/store");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST(Store, DuplicateIdsInFilesRejected) {
  TempDir dir;
  write_lines(dir.path() / kQubitFile, {qubit_json("qc-1", 60.0).dump(), qubit_json("qc-1", 70.0).dump()});
  EXPECT_THROW(load_components(dir.path()), Error);
}

TEST(Store, StatsOfPublishedCountsPreset) {
  const auto stats = store_stats(synth_generate(synth_preset("paper-counts"), 42));
  EXPECT_EQ(stats.qubits, 1934u);
  EXPECT_EQ(stats.resonators, 1099u);
  EXPECT_EQ(stats.quarter_wave, 693u);
  EXPECT_EQ(stats.half_wave, 406u);
  EXPECT_EQ(stats.couplers, 430u);
  EXPECT_EQ(stats.lumped_combinations, 174580u);
  EXPECT_EQ(stats.resonator_combinations, 175273u);
  EXPECT_EQ(stats.composed, 4775617u);
  EXPECT_EQ(stats.validated, 6u);
}

TEST(Store, StatsJsonKeys) {
  const json j = to_json(store_stats(synth_generate(synth_preset("small"), 1)));
  for (const char* key : {"qubits", "resonators", "couplers", "composed", "lumped_combinations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("composed"), 108);
}
