#include <benchmark/benchmark.h>

#include "siccalc/consistency_geometry.hpp"
#include "siccalc/contextuality.hpp"
#include "siccalc/io.hpp"
#include "siccalc/random.hpp"
#include "siccalc/urgleichung.hpp"

using namespace siccalc;

static void BM_FindFiducial(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(find_fiducial(d, seed++, 16, 2000));
}
BENCHMARK(BM_FindFiducial)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_StateToProb(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SicFrame f = SicFrame::from_fiducial(find_fiducial(d, 42, 16, 2000).fiducial);
  const DensityOperator rho = random_density(d, d, 7);
  for (auto _ : state) benchmark::DoNotOptimize(state_to_prob(rho, f));
}
BENCHMARK(BM_StateToProb)->DenseRange(2, 8);

static void BM_StructureTensor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SicFrame f = SicFrame::from_fiducial(find_fiducial(d, 42, 16, 2000).fiducial);
  for (auto _ : state) benchmark::DoNotOptimize(structure_tensor(f));
}
BENCHMARK(BM_StructureTensor)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

static void BM_CheckConsistent(benchmark::State& state) {
  const SicFrame f = SicFrame::from_fiducial(bundled_fiducial(3));
  Rng rng(3);
  std::vector<SimplexPoint> pts;
  for (int k = 0; k < state.range(0); ++k) pts.emplace_back(state_to_prob(random_density(3, 1, rng), f));
  for (auto _ : state) benchmark::DoNotOptimize(check_consistent(pts, 3));
}
BENCHMARK(BM_CheckConsistent)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_PeresColoring(benchmark::State& state) {
  const RayBasisSet s = rayset_from_json(read_json_file(data_file("peres33.json")));
  for (auto _ : state) benchmark::DoNotOptimize(find_coloring(s));
}
BENCHMARK(BM_PeresColoring)->Unit(benchmark::kMicrosecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const SicFrame f = SicFrame::from_fiducial(bundled_fiducial(2));
  const CascadeExperiment exp(f, random_povm(2, 2, 5), random_density(2, 1, 6));
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_cascade(exp, Context::ViaSky, 1'000'000, 9, threads));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
