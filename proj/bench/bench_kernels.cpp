#include <benchmark/benchmark.h>

#include <map>

#include "exl/geometry.hpp"
#include "exl/kernels.hpp"
#include "exl/synth.hpp"

using namespace exl;

namespace {

struct Inputs {
  VectorField3 v, w, h;
  std::vector<Separation> seps;
};

const Inputs& inputs(int n) {
  static std::map<int, Inputs> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const Grid3 g(n, kTwoPi);
  SpectrumSpec s;
  s.kmax = n / 4;
  s.seed = 1;
  VectorField3 v = random_solenoidal(g, s);
  VectorField3 w = curl(v);
  s.seed = 2;
  VectorField3 h = random_solenoidal(g, s);
  const std::vector<double> radii{0.1, 0.2, 0.4};
  auto seps = separations(radii, direction_set_icosa(0).directions);
  return cache.emplace(n, Inputs{std::move(v), std::move(w), std::move(h), std::move(seps)}).first->second;
}

void BM_Fused(benchmark::State& st) {
  const Inputs& in = inputs(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(increment_moments({&in.v, &in.w, &in.h}, in.seps));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(in.seps.size()));
}

void BM_Reference(benchmark::State& st) {
  const Inputs& in = inputs(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(increment_moments_reference({&in.v, &in.w, &in.h}, in.seps));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(in.seps.size()));
}

}  // namespace

BENCHMARK(BM_Fused)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Reference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
