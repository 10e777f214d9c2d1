#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

#include "cqd/error.hpp"
#include "cqd/interpolate.hpp"
#include "cqd/jc_oracle.hpp"
#include "cqd/search.hpp"
#include "cqd/shifts.hpp"
#include "cqd/store.hpp"
#include "cqd/synth.hpp"
#include "cqd/target.hpp"

namespace cqd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Config {
  std::string store;
  std::string output = "json";
  unsigned threads = 1;
  std::uint64_t seed = 42;
  std::string log_level = "warn";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(const Config& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    sink->set_pattern("[%l] %v");
    log_ = std::make_shared<spdlog::logger>("cqd", sink);
    log_->set_level(spdlog::level::from_str(cfg.log_level));
  }

  const Config& cfg() const { return cfg_; }
  std::ostream& out() { return out_; }
  spdlog::logger& log() { return *log_; }
  bool table() const { return cfg_.output == "table"; }

  db::ComponentStore load_store() {
    if (cfg_.store.empty()) throw UsageError("no store given; pass --store or set CQD_STORE");
    auto loaded = db::load_components(cfg_.store);
    for (const auto& issue : loaded.issues) {
      std::string what;
      for (const auto& v : issue.violations) what += (what.empty() ? "" : "; ") + v;
      log_->warn("{}:{} {} rejected: {}", issue.file, issue.line, issue.id.empty() ? "<record>" : issue.id, what);
    }
    log_->info("loaded {} qubit-claws, {} resonators, {} couplers, {} validated devices from {}",
               loaded.store.qubits().size(), loaded.store.resonators().size(), loaded.store.couplers().size(),
               loaded.store.validated().size(), cfg_.store);
    return std::move(loaded.store);
  }

  void print_json(const json& j) { out_ << j.dump(2) << '\n'; }

 private:
  Config cfg_;
  std::ostream& out_;
  std::shared_ptr<spdlog::logger> log_;
};

std::string g6(double v) { return fmt::format("{:.6g}", v); }

query::TargetSpec build_target(const std::string& target, const std::string& weights, const std::string& metric,
                               const std::string& expression) {
  auto spec = query::parse_target(target);
  if (!weights.empty()) query::parse_weights(weights, spec);
  if (!metric.empty()) spec.metric = query::parse_metric(metric);
  if (!expression.empty()) {
    spec.expression = expression;
    spec.metric = query::Metric::custom;
  }
  return spec;
}

// --- stats -----------------------------------------------------------------

int cmd_stats(Context& ctx) {
  const auto store = ctx.load_store();
  const auto s = db::store_stats(store);
  if (!ctx.table()) {
    ctx.print_json(db::to_json(s));
    return kOk;
  }
  const std::pair<const char*, std::size_t> rows[] = {
      {"qubit-claws", s.qubits},           {"resonators", s.resonators},
      {"  quarter-wave", s.quarter_wave},   {"  half-wave", s.half_wave},
      {"  distributed", s.distributed},     {"  lumped", s.lumped},
      {"couplers", s.couplers},             {"validated devices", s.validated},
      {"claw groups", s.claw_groups},       {"lumped x coupler", s.lumped_combinations},
      {"resonator designs", s.resonator_combinations}, {"composed designs", s.composed}};
  for (const auto& [name, n] : rows) ctx.out() << fmt::format("{:<20} {:>12}\n", name, n);
  return kOk;
}

// --- ingest ----------------------------------------------------------------

int cmd_ingest(Context& ctx, const std::string& from, bool strict) {
  if (ctx.cfg().store.empty()) throw UsageError("no destination store; pass --store or set CQD_STORE");
  auto loaded = db::load_components(from);
  json report = json::array();
  for (const auto& issue : loaded.issues) {
    report.push_back({{"file", issue.file}, {"line", issue.line}, {"id", issue.id}, {"violations", issue.violations}});
  }
  db::write_components(loaded.store, ctx.cfg().store);
  const auto s = db::store_stats(loaded.store);
  if (ctx.table()) {
    ctx.out() << fmt::format("ingested {} qubit-claws, {} resonators, {} couplers, {} validated into {}\n", s.qubits,
                             s.resonators, s.couplers, s.validated, ctx.cfg().store);
    for (const auto& issue : loaded.issues) {
      for (const auto& v : issue.violations) {
        ctx.out() << fmt::format("  rejected {}:{} {}: {}\n", issue.file, issue.line, issue.id, v);
      }
    }
  } else {
    ctx.print_json({{"stats", db::to_json(s)}, {"rejected", report}});
  }
  return strict && !loaded.issues.empty() ? kDataError : kOk;
}

// --- query -----------------------------------------------------------------

struct QueryArgs {
  std::string target;
  std::string weights;
  std::string metric;
  std::string expression;
  std::size_t k = 10;
  std::optional<double> E_J;
  double claw_tolerance = 0.0;
  double Z_0 = 50.0;
  bool timing = false;
};

int cmd_query(Context& ctx, const QueryArgs& a) {
  const auto spec = build_target(a.target, a.weights, a.metric, a.expression);
  const auto store = ctx.load_store();
  query::SearchOptions opts;
  opts.k = a.k;
  opts.threads = ctx.cfg().threads;
  opts.claw_tolerance = a.claw_tolerance;
  opts.Z_0 = a.Z_0;
  opts.E_J = a.E_J;
  const auto result = query::top_k_search(store, spec, opts);
  ctx.log().info("scanned {} candidates, skipped {}, {:.3f} s", result.stats.candidates_scanned, result.stats.skipped,
                 result.stats.wall_time_s);
  if (!ctx.table()) {
    ctx.print_json(query::to_json(result, a.timing));
    return kOk;
  }
  auto& out = ctx.out();
  if (result.E_J) out << fmt::format("E_J = {} GHz\n", g6(*result.E_J));
  out << fmt::format("{:>4} {:>12} {:<10} {:<10} {:<10} {:>8} {:>9} {:>8} {:>9} {:>8}\n", "rank", "cost", "qubit",
                     "resonator", "coupler", "f_q", "alpha", "f_r", "kappa", "g");
  int rank = 1;
  for (const auto& d : result.ranked) {
    out << fmt::format("{:>4} {:>12.5e} {:<10} {:<10} {:<10} {:>8.4f} {:>9.4f} {:>8.4f} {:>9.4f} {:>8.5f}\n", rank++,
                       d.cost, d.qubit_id, d.resonator_id, d.coupler_id.value_or("-"), d.params.f_q, d.params.alpha,
                       d.params.f_r, d.params.kappa, d.params.g);
  }
  for (const auto& tc : result.closest_per_term) {
    out << fmt::format("closest in {} (target {}):", query::to_string(tc.term), g6(tc.target));
    for (std::size_t i = 0; i < tc.designs.size(); ++i) {
      const auto& d = tc.designs[i];
      out << fmt::format(" {}/{}{} (|err| {})", d.qubit_id, d.resonator_id, d.coupler_id ? "/" + *d.coupler_id : "",
                         g6(tc.abs_error[i]));
    }
    out << '\n';
  }
  if (result.closest_validated) {
    out << fmt::format("closest validated device: {} (cost {})\n", result.closest_validated->id,
                       g6(result.closest_validated->cost));
  }
  out << fmt::format("scanned {} candidates, skipped {}\n", result.stats.candidates_scanned, result.stats.skipped);
  return kOk;
}

// --- interpolate -----------------------------------------------------------

int cmd_interpolate(Context& ctx, const std::string& target, const std::string& weights, const std::string& type,
                    double Z_0) {
  const auto spec = build_target(target, weights, "", "");
  const auto store = ctx.load_store();
  interp::InterpolateOptions opts;
  opts.type = parse_resonator_type(type);
  opts.Z_0 = Z_0;
  const auto d = interp::interpolate_design(store, spec, opts);
  for (const auto& w : d.warnings) ctx.log().warn("{}: {}", interp::to_string(w.kind), w.message);
  if (!ctx.table()) {
    ctx.print_json(interp::to_json(d));
    return kOk;
  }
  auto& out = ctx.out();
  out << fmt::format("base: qubit {} resonator {}{}\n", d.base_qubit_id, d.base_resonator_id,
                     d.base_coupler_id ? " coupler " + *d.base_coupler_id : "");
  out << fmt::format("{:<22} {:>12} {:>12} {:>8}\n", "dimension (um)", "base", "scaled", "factor");
  out << fmt::format("{:<22} {:>12.3f} {:>12.3f} {:>8.4f}\n", "cross_length", d.base_geometry.cross_length,
                     d.geometry.cross_length, d.scale.s_cross);
  out << fmt::format("{:<22} {:>12.3f} {:>12.3f} {:>8.4f}\n", "claw_length", d.base_geometry.claw_length,
                     d.geometry.claw_length, d.scale.s_claw);
  out << fmt::format("{:<22} {:>12.3f} {:>12.3f} {:>8.4f}\n", "cpw_length", d.base_geometry.cpw_length,
                     d.geometry.cpw_length, d.scale.s_res);
  out << fmt::format("{:<22} {:>12.3f} {:>12.3f} {:>8.4f}\n", "feedline_coupling_dim",
                     d.base_geometry.feedline_coupling_dim, d.geometry.feedline_coupling_dim, d.scale.s_fline);
  out << fmt::format("{:<8} {:>12} {:>12}\n", "param", "target", "estimated");
  const std::tuple<const char*, double, double> rows[] = {{"f_q", d.target.f_q, d.estimated.f_q},
                                                          {"alpha", d.target.alpha, d.estimated.alpha},
                                                          {"f_r", d.target.f_r, d.estimated.f_r},
                                                          {"kappa", d.target.kappa, d.estimated.kappa},
                                                          {"g", d.target.g, d.estimated.g}};
  for (const auto& [name, t, e] : rows) out << fmt::format("{:<8} {:>12.6g} {:>12.6g}\n", name, t, e);
  out << fmt::format("length recalculated: {}\n", d.recalc_applied ? "yes" : "no");
  for (const auto& w : d.warnings) out << fmt::format("warning [{}]: {}\n", interp::to_string(w.kind), w.message);
  return kOk;
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
  double f_q = 0.0;
  double f_r = 0.0;
  double alpha = 0.0;
  double g = 0.0;
  int n_r = 12;
  int n_q = 6;
};

int cmd_oracle(Context& ctx, const OracleArgs& a) {
  const auto pert = physics::perturbative_shifts(a.g, a.f_q, a.f_r, a.alpha);
  const auto rwa = physics::rwa_shifts(a.g, a.f_q, a.f_r, a.alpha);
  const oracle::JCSpec spec{a.f_r, a.f_q, a.alpha, a.g, a.n_r, a.n_q};
  const auto num = oracle::numerical_shifts(spec, oracle::CouplingForm::full);
  const auto num_rwa = oracle::numerical_shifts(spec, oracle::CouplingForm::rwa);
  auto pct = [](double p, double n) { return 100.0 * (p - n) / n; };
  if (!ctx.table()) {
    ctx.print_json({{"inputs", {{"f_q", a.f_q}, {"f_r", a.f_r}, {"alpha", a.alpha}, {"g", a.g}}},
                    {"perturbative", {{"chi_L", pert.chi_L}, {"chi", pert.chi}}},
                    {"numerical", {{"chi_L", num.chi_L}, {"chi", num.chi}, {"n_r", num.n_r}, {"n_q", num.n_q}}},
                    {"perturbative_rwa", {{"chi_L", rwa.chi_L}, {"chi", rwa.chi}}},
                    {"numerical_rwa", {{"chi_L", num_rwa.chi_L}, {"chi", num_rwa.chi}}},
                    {"delta_percent", {{"chi_L", pct(pert.chi_L, num.chi_L)}, {"chi", pct(pert.chi, num.chi)}}}});
    return kOk;
  }
  auto& out = ctx.out();
  out << fmt::format("{:<10} {:>16} {:>16} {:>10}\n", "shift", "perturbative", "numerical", "delta");
  out << fmt::format("{:<10} {:>12.6f} MHz {:>12.6f} MHz {:>9.3f}%\n", "chi_L", 1e3 * pert.chi_L, 1e3 * num.chi_L,
                     pct(pert.chi_L, num.chi_L));
  out << fmt::format("{:<10} {:>12.6f} MHz {:>12.6f} MHz {:>9.3f}%\n", "chi", 1e3 * pert.chi, 1e3 * num.chi,
                     pct(pert.chi, num.chi));
  out << fmt::format("{:<10} {:>12.6f} MHz {:>12.6f} MHz {:>9.3f}%\n", "chi_L rwa", 1e3 * rwa.chi_L,
                     1e3 * num_rwa.chi_L, pct(rwa.chi_L, num_rwa.chi_L));
  out << fmt::format("{:<10} {:>12.6f} MHz {:>12.6f} MHz {:>9.3f}%\n", "chi rwa", 1e3 * rwa.chi, 1e3 * num_rwa.chi,
                     pct(rwa.chi, num_rwa.chi));
  out << fmt::format("cutoffs: {} photons x {} transmon levels\n", num.n_r, num.n_q);
  return kOk;
}

// --- synth -----------------------------------------------------------------

int cmd_synth(Context& ctx, const std::string& preset, std::string out_dir) {
  if (out_dir.empty()) out_dir = ctx.cfg().store;
  if (out_dir.empty()) throw UsageError("synth needs --out or --store");
  const auto config = db::synth_preset(preset);
  const auto store = db::synth_generate(config, ctx.cfg().seed);
  db::write_components(store, out_dir);
  const auto s = db::store_stats(store);
  if (ctx.table()) {
    ctx.out() << fmt::format("wrote preset {} (seed {}) to {}: {} qubit-claws, {} resonators, {} couplers, {} "
                             "validated, {} composed designs\n",
                             preset, ctx.cfg().seed, out_dir, s.qubits, s.resonators, s.couplers, s.validated,
                             s.composed);
  } else {
    ctx.print_json({{"preset", preset}, {"seed", ctx.cfg().seed}, {"out", out_dir}, {"stats", db::to_json(s)}});
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::invalid_argument: return kUsage;
    default: return kDataError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuit-QED design database: search, interpolate and check transmon-resonator designs", "cqd"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  Config cfg;
  app.add_option("--store", cfg.store, "Store directory")->envname("CQD_STORE");
  app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--threads", cfg.threads, "Worker threads for search")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for synthetic data");
  app.add_option("--log-level", cfg.log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  auto* stats = app.add_subcommand("stats", "Record counts and composed-design count");

  auto* ingest = app.add_subcommand("ingest", "Validate records from a directory and write them into --store");
  std::string ingest_from;
  bool strict = false;
  ingest->add_option("--from", ingest_from, "Directory holding the record files")->required();
  ingest->add_flag("--strict", strict, "Exit with a data error when any record is rejected");

  const std::string target_help =
      "Comma-separated key=value list over f_q, alpha, f_r, g (GHz) and kappa (MHz), "
      "e.g. \"f_q=4.2,alpha=-0.2,f_r=6.5,kappa=0.15,g=0.06\"";
  const std::string weights_help =
      "key=value weights (default 1 per given target); naming Delta, chi or chi_L adds that derived term";

  auto* query_cmd = app.add_subcommand("query", "Closest pre-simulated and validated designs");
  QueryArgs qa;
  double query_ej = 0.0;
  query_cmd->add_option("--target", qa.target, target_help)->required();
  query_cmd->add_option("--weights", qa.weights, weights_help);
  query_cmd->add_option("--metric", qa.metric, "weighted_relative_l2 (default), l1, chebyshev, custom");
  query_cmd->add_option("--expression", qa.expression,
                        "Custom cost over f_q, alpha, f_r, kappa, g, Delta, chi, chi_L and <term>_target");
  query_cmd->add_option("--k", qa.k, "Number of ranked designs")->check(CLI::PositiveNumber);
  auto* ej_opt = query_cmd->add_option("--ej", query_ej, "Josephson energy in GHz (derived from f_q and alpha when omitted)")
                     ->check(CLI::PositiveNumber);
  query_cmd->add_option("--claw-tolerance", qa.claw_tolerance, "Relative claw-length tolerance for pairing")
      ->check(CLI::Range(0.0, 0.999999));
  query_cmd->add_option("--z0", qa.Z_0, "Feedline impedance in ohm")->check(CLI::PositiveNumber);
  query_cmd->add_flag("--timing", qa.timing, "Include wall time in the JSON output");

  auto* interp_cmd = app.add_subcommand("interpolate", "Scale stored components toward an unsimulated design");
  std::string it_target, it_weights, it_type = "quarter";
  double it_z0 = 50.0;
  interp_cmd->add_option("--target", it_target, target_help + "; all five are required")->required();
  interp_cmd->add_option("--weights", it_weights, weights_help);
  interp_cmd->add_option("--type", it_type, "Resonator type")->check(CLI::IsMember({"quarter", "half"}));
  interp_cmd->add_option("--z0", it_z0, "Feedline impedance in ohm")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "Perturbative vs exact dispersive shifts");
  OracleArgs oa;
  oracle_cmd->add_option("--fq", oa.f_q, "Qubit frequency, GHz")->required();
  oracle_cmd->add_option("--fr", oa.f_r, "Resonator frequency, GHz")->required();
  oracle_cmd->add_option("--alpha", oa.alpha, "Anharmonicity, GHz")->required();
  oracle_cmd->add_option("--g", oa.g, "Coupling, GHz")->required();
  oracle_cmd->add_option("--nr", oa.n_r, "Initial photon cutoff")->check(CLI::Range(2, 4096));
  oracle_cmd->add_option("--nq", oa.n_q, "Initial transmon-level cutoff")->check(CLI::Range(3, 1024));

  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic component store");
  std::string preset = "small", synth_out;
  synth_cmd->add_option("--preset", preset, "paper-counts | bench | interp | small")
      ->check(CLI::IsMember(db::synth_preset_names()));
  synth_cmd->add_option("--out", synth_out, "Output directory (defaults to --store)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx(cfg, out, err);
  try {
    if (ej_opt->count() > 0) qa.E_J = query_ej;
    if (*stats) return cmd_stats(ctx);
    if (*ingest) return cmd_ingest(ctx, ingest_from, strict);
    if (*query_cmd) return cmd_query(ctx, qa);
    if (*interp_cmd) return cmd_interpolate(ctx, it_target, it_weights, it_type, it_z0);
    if (*oracle_cmd) return cmd_oracle(ctx, oa);
    if (*synth_cmd) return cmd_synth(ctx, preset, synth_out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace cqd::cli
