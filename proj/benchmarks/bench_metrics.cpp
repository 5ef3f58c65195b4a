#include <benchmark/benchmark.h>

#include <random>

#include "streamlat/simulate.hpp"
#include "streamlat/stream_metrics.hpp"

using namespace streamlat;

namespace {

SimResult make_stream(int sentences, std::uint64_t seed) {
  SimCorpus corpus = random_corpus(sentences, seed);
  PolicySpec policy{.k = 5, .gamma_mode = GammaMode::per_sentence};
  return simulate_stream(corpus, policy);
}

void BM_dal_sentence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> g;
  g.reserve(n);
  for (int i = 1; i <= n; ++i) g.push_back(std::min(i + 4, n));
  SentenceView v = make_view(n, std::move(g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dal_sentence(v, 0.95).score.value);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_dal_sentence)->Arg(1000)->Arg(100000);

void BM_evaluate_stream(benchmark::State& state) {
  auto sim = make_stream(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto eval = evaluate_stream(sim.record.trace, sim.src_seg, sim.hyp_seg);
    benchmark::DoNotOptimize(eval.al->aggregate);
  }
  state.SetItemsProcessed(state.iterations() * sim.record.trace.G.size());
}
BENCHMARK(BM_evaluate_stream)->Arg(100)->Arg(1000)->Arg(6000);

void BM_localize_delays(benchmark::State& state) {
  auto sim = make_stream(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(localize_delays(sim.record.trace, sim.src_seg, sim.hyp_seg));
  }
}
BENCHMARK(BM_localize_delays)->Arg(1000);

}  // namespace
