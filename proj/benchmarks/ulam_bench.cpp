#include <benchmark/benchmark.h>

#include "ulam/clustering.hpp"
#include "ulam/planted.hpp"
#include "ulam/random.hpp"
#include "ulam/streaming.hpp"
#include "ulam/tournament.hpp"

using namespace ulam;

static void BM_UlamDistance(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto x = random_permutation(d, rng);
  const auto y = random_permutation(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ulam_distance(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UlamDistance)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNLogN);

static void BM_LcsOracle(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto x = random_permutation(d, rng);
  const auto y = random_permutation(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lcs_length_oracle(x, y));
}
BENCHMARK(BM_LcsOracle)->RangeMultiplier(4)->Range(16, 1024);

static void BM_MedianReconstruct(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<Permutation> tuple;
  for (int i = 0; i < 5; ++i) tuple.push_back(random_permutation(d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(median_reconstruct(tuple));
}
BENCHMARK(BM_MedianReconstruct)->RangeMultiplier(4)->Range(8, 512);

static void BM_ApproxMedian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_planted({1, 20, {n}, 3, 0, 3});
  for (auto _ : state) benchmark::DoNotOptimize(approx_median(inst.data));
}
BENCHMARK(BM_ApproxMedian)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_SketchUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_planted({3, 50, {n / 3, n / 3, n - 2 * (n / 3)}, 5, 0, 4});
  StreamConfig c;
  c.n_bound = n;
  c.dimension = 50;
  c.k = 3;
  c.beta = 0.1;
  c.lambda = 0.1;
  c.rho = 0.5;
  c.coreset_block = 200;
  for (auto _ : state) {
    auto s = sketch_init(c);
    for (const auto& x : inst.data) sketch_update(s, x);
    benchmark::DoNotOptimize(s.items_seen);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SketchUpdate)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
