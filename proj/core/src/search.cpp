#include "cqd/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <tuple>

#include "cqd/compose.hpp"
#include "cqd/cost.hpp"
#include "cqd/error.hpp"
#include "cqd/transmon.hpp"

namespace cqd::query {

using nlohmann::json;

namespace {

struct Hit {
  double key = 0.0;
  std::size_t qubit = 0;
  std::size_t resonator = 0;
  std::size_t coupler = db::kNoCoupler;
  std::string_view qubit_id;
  std::string_view resonator_id;
  std::string_view coupler_id;
  HamiltonianParams params;
};

bool before(const Hit& a, const Hit& b) {
  return std::tie(a.key, a.qubit_id, a.resonator_id, a.coupler_id) <
         std::tie(b.key, b.qubit_id, b.resonator_id, b.coupler_id);
}

// Keeps the `capacity` smallest hits under `before`.
class BoundedBest {
 public:
  explicit BoundedBest(std::size_t capacity) : capacity_(capacity) { heap_.reserve(capacity + 1); }

  bool admits(double key) const { return heap_.size() < capacity_ || key <= heap_.front().key; }

  void offer(const Hit& h) {
    if (heap_.size() < capacity_) {
      heap_.push_back(h);
      std::push_heap(heap_.begin(), heap_.end(), before);
    } else if (before(h, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), before);
      heap_.back() = h;
      std::push_heap(heap_.begin(), heap_.end(), before);
    }
  }

  std::vector<Hit>& items() { return heap_; }

 private:
  std::size_t capacity_;
  std::vector<Hit> heap_;
};

struct WorkerResult {
  BoundedBest top;
  std::vector<BoundedBest> per_term;
  std::size_t scanned = 0;
  std::size_t skipped = 0;
};

std::vector<Hit> merge(std::vector<BoundedBest*> parts, std::size_t k) {
  std::vector<Hit> all;
  for (auto* p : parts) all.insert(all.end(), p->items().begin(), p->items().end());
  std::sort(all.begin(), all.end(), before);
  if (all.size() > k) all.resize(k);
  return all;
}

RankedDesign materialize(const Hit& h, double E_J, double cost) {
  RankedDesign d;
  d.qubit_id = std::string(h.qubit_id);
  d.resonator_id = std::string(h.resonator_id);
  if (h.coupler != db::kNoCoupler) d.coupler_id = std::string(h.coupler_id);
  d.params = h.params;
  d.E_J = E_J;
  d.cost = cost;
  return d;
}

// Qubit ranges of roughly equal candidate counts.
std::vector<std::pair<std::size_t, std::size_t>> partition(const db::CandidateComposer& composer, unsigned parts) {
  const std::size_t n = composer.qubit_count();
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += composer.candidates_for_qubit(i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  std::size_t acc = 0;
  for (unsigned p = 1; p <= parts; ++p) {
    const std::size_t goal = total * p / parts;
    std::size_t end = begin;
    while (end < n && (acc < goal || p == parts)) acc += composer.candidates_for_qubit(end++);
    out.emplace_back(begin, end);
    begin = end;
  }
  return out;
}

}  // namespace

QueryResult top_k_search(const db::ComponentStore& store, const TargetSpec& target, const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  if (options.k < 1) throw Error(ErrorCode::invalid_argument, "k must be >= 1");
  if (options.threads < 1) throw Error(ErrorCode::invalid_argument, "threads must be >= 1");
  const CostFunction cost(target);

  const bool has_candidates = !store.qubits().empty() && !store.resonators().empty();
  if (!has_candidates && store.validated().empty()) {
    throw Error(ErrorCode::empty_store, "store holds no composable components and no validated devices");
  }

  QueryResult result;
  result.target = target;
  result.stats.threads = options.threads;

  if (has_candidates) {
    if (options.E_J) {
      result.E_J = *options.E_J;
    } else {
      const auto& fq = target.value(Term::f_q);
      const auto& alpha = target.value(Term::alpha);
      if (!fq || !alpha) {
        throw Error(ErrorCode::invalid_argument, "deriving E_J needs f_q and alpha targets; pass E_J explicitly otherwise");
      }
      try {
        const auto jc = physics::find_ej_ec(*fq, *alpha);
        result.E_J = jc.E_J;
        result.E_C = jc.E_C;
      } catch (const Error& e) {
        throw Error(ErrorCode::infeasible_target, "cannot derive E_J from f_q=" + std::to_string(*fq) +
                                                      " GHz, alpha=" + std::to_string(*alpha) + " GHz: " + e.what());
      }
    }

    const db::CandidateComposer composer(store, {*result.E_J, options.claw_tolerance, options.Z_0});
    const auto& rt = cost.target();
    std::vector<Term> terms = cost.weighted_terms();
    if (rt.metric == Metric::custom) {
      for (std::size_t i = 0; i < kTermCount; ++i) {
        if (rt.has_value[i]) terms.push_back(static_cast<Term>(i));
      }
    }

    const auto ranges = partition(composer, std::min<unsigned>(options.threads, std::max<std::size_t>(1, composer.qubit_count())));
    std::vector<WorkerResult> workers;
    workers.reserve(ranges.size());
    for (std::size_t w = 0; w < ranges.size(); ++w) {
      workers.push_back({BoundedBest(options.k), std::vector<BoundedBest>(terms.size(), BoundedBest(2)), 0, 0});
    }

    auto run = [&](std::size_t w) {
      auto& wr = workers[w];
      Hit hit;
      const auto counts = composer.for_each(ranges[w].first, ranges[w].second, [&](const db::CandidateDesign& c) {
        double value = 0.0;
        try {
          value = cost(c.params);
        } catch (const Error&) {
          ++wr.skipped;
          return;
        }
        if (std::isnan(value)) {
          ++wr.skipped;
          return;
        }
        ++wr.scanned;
        hit.qubit = c.qubit;
        hit.resonator = c.resonator;
        hit.coupler = c.coupler;
        hit.qubit_id = c.qubit_id;
        hit.resonator_id = c.resonator_id;
        hit.coupler_id = c.coupler_id;
        hit.params = c.params;
        if (wr.top.admits(value)) {
          hit.key = value;
          wr.top.offer(hit);
        }
        for (std::size_t t = 0; t < terms.size(); ++t) {
          double err = 0.0;
          try {
            err = std::abs(rt.value[static_cast<std::size_t>(terms[t])] - term_value(c.params, terms[t]));
          } catch (const Error&) {
            continue;
          }
          if (wr.per_term[t].admits(err)) {
            hit.key = err;
            wr.per_term[t].offer(hit);
          }
        }
      });
      wr.skipped += counts.skipped;
    };

    if (workers.size() == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers.size());
      for (std::size_t w = 0; w < workers.size(); ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }

    std::vector<BoundedBest*> tops;
    for (auto& w : workers) {
      tops.push_back(&w.top);
      result.stats.candidates_scanned += w.scanned;
      result.stats.skipped += w.skipped;
    }
    for (const auto& h : merge(tops, options.k)) result.ranked.push_back(materialize(h, *result.E_J, h.key));

    for (std::size_t t = 0; t < terms.size(); ++t) {
      std::vector<BoundedBest*> parts;
      for (auto& w : workers) parts.push_back(&w.per_term[t]);
      TermClosest tc;
      tc.term = terms[t];
      tc.target = rt.value[static_cast<std::size_t>(terms[t])];
      for (const auto& h : merge(parts, 2)) {
        tc.designs.push_back(materialize(h, *result.E_J, cost(h.params)));
        tc.abs_error.push_back(h.key);
      }
      result.closest_per_term.push_back(std::move(tc));
    }
  }

  for (const auto& v : store.validated()) {
    const auto measured = v.as_params();
    double value = 0.0;
    try {
      value = cost(measured);
    } catch (const Error&) {
      continue;
    }
    if (std::isnan(value)) continue;
    ++result.stats.validated_scanned;
    auto& best = result.closest_validated;
    if (!best || std::tie(value, v.id) < std::tie(best->cost, best->id)) best = ValidatedMatch{v.id, measured, value};
  }

  result.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

json to_json(const HamiltonianParams& p) {
  return json{{"f_q", p.f_q}, {"alpha", p.alpha}, {"f_r", p.f_r}, {"kappa", p.kappa}, {"g", p.g}};
}

json to_json(const RankedDesign& d) {
  json j{{"qubit_id", d.qubit_id}, {"resonator_id", d.resonator_id}};
  j["coupler_id"] = d.coupler_id ? json(*d.coupler_id) : json(nullptr);
  j["params"] = to_json(d.params);
  j["E_J"] = d.E_J;
  j["cost"] = d.cost;
  return j;
}

json to_json(const QueryResult& r, bool include_timing) {
  json j;
  j["target"] = to_json(r.target);
  j["E_J"] = r.E_J ? json(*r.E_J) : json(nullptr);
  j["E_C"] = r.E_C ? json(*r.E_C) : json(nullptr);
  json ranked = json::array();
  for (const auto& d : r.ranked) ranked.push_back(to_json(d));
  j["ranked"] = std::move(ranked);
  json per = json::object();
  for (const auto& tc : r.closest_per_term) {
    json list = json::array();
    for (std::size_t i = 0; i < tc.designs.size(); ++i) {
      json d = to_json(tc.designs[i]);
      d["abs_error"] = tc.abs_error[i];
      list.push_back(std::move(d));
    }
    per[std::string(to_string(tc.term))] = json{{"target", tc.target}, {"closest", std::move(list)}};
  }
  j["closest_per_term"] = std::move(per);
  if (r.closest_validated) {
    j["closest_validated"] = json{{"id", r.closest_validated->id},
                                  {"measured", to_json(r.closest_validated->measured)},
                                  {"cost", r.closest_validated->cost}};
  } else {
    j["closest_validated"] = nullptr;
  }
  json stats{{"candidates_scanned", r.stats.candidates_scanned},
             {"skipped", r.stats.skipped},
             {"validated_scanned", r.stats.validated_scanned}};
  if (include_timing) {
    stats["threads"] = r.stats.threads;
    stats["wall_time_s"] = r.stats.wall_time_s;
  }
  j["search_stats"] = std::move(stats);
  return j;
}

}  // namespace cqd::query
