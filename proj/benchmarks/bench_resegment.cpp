#include <benchmark/benchmark.h>

#include <random>

#include "streamlat/resegment.hpp"

using namespace streamlat;

namespace {

struct Instance {
  TokenStream hyp;
  std::vector<TokenStream> refs;
};

Instance make_instance(std::size_t ref_tokens, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst;
  std::size_t total = 0;
  while (total < ref_tokens) {
    TokenStream ref;
    std::size_t len = 10 + rng() % 21;
    for (std::size_t i = 0; i < len; ++i)
      ref.push_back("w" + std::to_string(rng() % 5000));
    total += ref.size();
    for (const auto& tok : ref) {
      if (rng() % 25 == 0) continue;
      inst.hyp.push_back(rng() % 25 == 1 ? "x" : tok);
    }
    inst.refs.push_back(std::move(ref));
  }
  return inst;
}

void BM_resegment(benchmark::State& state) {
  auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resegment(inst.hyp, inst.refs).total_cost);
  }
  state.SetItemsProcessed(state.iterations() * inst.hyp.size());
}
BENCHMARK(BM_resegment)->Arg(500)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_edit_distance(benchmark::State& state) {
  auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 101);
  TokenStream flat;
  for (const auto& r : inst.refs) flat.insert(flat.end(), r.begin(), r.end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(edit_distance(inst.hyp, flat));
  }
}
BENCHMARK(BM_edit_distance)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
