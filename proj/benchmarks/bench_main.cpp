#include <benchmark/benchmark.h>

#include <vector>

#include "sirus/eval.hpp"
#include "sirus/forest.hpp"
#include "sirus/quantiles.hpp"
#include "sirus/rng.hpp"
#include "sirus/rules.hpp"
#include "sirus/tree.hpp"

namespace {

// Binary outcome driven by one informative feature among noise.
sirus::Dataset synth(int n, int p, std::uint64_t seed) {
  sirus::Rng rng(seed);
  sirus::Dataset ds;
  ds.n = n;
  ds.p = p;
  ds.xcol.resize(static_cast<std::size_t>(n) * p);
  ds.y.resize(n);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i)
      ds.xcol[static_cast<std::size_t>(j) * n + i] =
          static_cast<double>(rng.below(1000000)) / 1000000.0;
  for (int i = 0; i < n; ++i) {
    const bool high = ds.xcol[i] >= 0.5;
    ds.y[i] = rng.below(10) < (high ? 9u : 1u) ? 1 : 0;
  }
  for (int j = 0; j < p; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  return ds;
}

void BM_grow_tree(benchmark::State& state) {
  const sirus::Dataset ds = synth(static_cast<int>(state.range(0)), 10, 7);
  const sirus::QuantileGrid grid = sirus::empirical_quantiles(ds, 10);
  const sirus::detail::BinnedData bd = sirus::detail::bin_dataset(ds, grid);
  std::uint64_t t = 0;
  for (auto _ : state) {
    sirus::TreeParams tp;
    tp.seed = sirus::derive_seed(42, t++);
    sirus::Rng rng(tp.seed);
    benchmark::DoNotOptimize(sirus::detail::grow_tree_binned(ds, grid, bd, tp, rng));
  }
}
BENCHMARK(BM_grow_tree)->Arg(500)->Arg(5000);

void BM_forest_1000_trees(benchmark::State& state) {
  const sirus::Dataset ds = synth(500, 10, 7);
  const sirus::QuantileGrid grid = sirus::empirical_quantiles(ds, 10);
  for (auto _ : state) {
    sirus::ForestParams params;
    params.max_trees = 1000;
    params.alpha = 1e-12;  // force the full cap
    params.threads = static_cast<int>(state.range(0));
    params.seed = 42;
    benchmark::DoNotOptimize(sirus::grow_forest(ds, grid, params));
  }
}
BENCHMARK(BM_forest_1000_trees)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_binom_cdf(benchmark::State& state) {
  const long long M = state.range(0);
  double p = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sirus::binom_cdf(M / 4, M, p));
    p = p < 0.7 ? p + 1e-6 : 0.3;
  }
}
BENCHMARK(BM_binom_cdf)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_epsilon(benchmark::State& state) {
  sirus::FrequencyTable ft;
  ft.M = 10000;
  sirus::Rng rng(3);
  for (int j = 0; j < 40; ++j) {
    for (int r = 1; r <= 9; ++r) {
      const long long c = 1 + static_cast<long long>(rng.below(10000));
      ft.counts[sirus::Path::single({j, r, sirus::Side::L})] = c;
      ft.counts[sirus::Path::single({j, r, sirus::Side::R})] = c;
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(sirus::epsilon(ft, 0.01));
}
BENCHMARK(BM_epsilon);

void BM_post_treat(benchmark::State& state) {
  const sirus::Dataset ds = synth(1000, 5, 11);
  const sirus::QuantileGrid grid = sirus::empirical_quantiles(ds, 10);
  sirus::ForestParams params;
  params.max_trees = 500;
  params.alpha = 1e-12;
  params.seed = 5;
  const sirus::ForestResult fr = sirus::grow_forest(ds, grid, params);
  const std::vector<sirus::Path> sel = sirus::select_paths(fr.table, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(sirus::post_treat(sel, ds, grid));
}
BENCHMARK(BM_post_treat)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
