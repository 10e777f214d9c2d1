#include <benchmark/benchmark.h>

#include "cqd/compose.hpp"
#include "cqd/search.hpp"
#include "cqd/synth.hpp"

using namespace cqd;

namespace {

const db::ComponentStore& bench_store() {
  static const auto store = db::synth_generate(db::synth_preset("bench"), 42);
  return store;
}

}  // namespace

static void BM_TopK(benchmark::State& state) {
  const auto& store = bench_store();
  const auto target = query::parse_target("f_q=4.2,alpha=-0.2,f_r=6.5,kappa=0.15,g=0.06");
  query::SearchOptions opt;
  opt.k = 10;
  opt.threads = static_cast<unsigned>(state.range(0));
  std::size_t scanned = 0;
  for (auto _ : state) {
    const auto r = query::top_k_search(store, target, opt);
    scanned = r.stats.candidates_scanned;
    benchmark::DoNotOptimize(r.ranked.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(scanned) * state.iterations());
}
BENCHMARK(BM_TopK)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Compose(benchmark::State& state) {
  const auto store = db::synth_generate(db::synth_preset("small"), 1);
  for (auto _ : state) {
    const db::CandidateComposer composer(store, {15.0, 0.0, 50.0});
    double sum = 0.0;
    composer.for_each([&](const db::CandidateDesign& d) { sum += d.params.g; });
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_Compose)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
