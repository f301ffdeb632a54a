#include <benchmark/benchmark.h>

#include <memory>

#include "nodal/arithmetic.hpp"
#include "nodal/geometry.hpp"
#include "nodal/lattice.hpp"
#include "nodal/random_wave.hpp"
#include "nodal/zeros.hpp"

using namespace nodal;

static void BM_EnumerateShell(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_shell(state.range(0)).n());
}
BENCHMARK(BM_EnumerateShell)->Arg(101)->Arg(1009)->Arg(10006);

static void BM_Kappa(benchmark::State& state) {
  const auto shell = enumerate_shell(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kappa(shell));
}
BENCHMARK(BM_Kappa)->Arg(21)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_CountZeros(benchmark::State& state) {
  auto shell = std::make_shared<const Shell>(enumerate_shell(state.range(0)));
  const LineSegment line(Direction::parse("irr:1,sqrt2,sqrt3"), 1.0);
  const auto sample = sample_wave(shell, 7);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros(sample, line).count);
}
BENCHMARK(BM_CountZeros)->Arg(5)->Arg(101)->Arg(1009);

static void BM_PairSums(benchmark::State& state) {
  const auto shell = enumerate_shell(state.range(0));
  const auto dir = Direction::parse("irr:1,sqrt2,sqrt3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_sums(shell, dir, 0.1, SplitMode::Relative, 1).s_small);
  }
}
BENCHMARK(BM_PairSums)->Arg(101)->Arg(1009)->Unit(benchmark::kMillisecond);

static void BM_RieszEnergy(benchmark::State& state) {
  const auto projected = project_shell(enumerate_shell(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(riesz_energy(projected, 1.0, 1).energy);
}
BENCHMARK(BM_RieszEnergy)->Arg(1009)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
