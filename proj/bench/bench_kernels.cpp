// Serial reference versus OpenMP kernel on fixed random instances.

#include <benchmark/benchmark.h>

#include "nvlab/linalg.hpp"
#include "nvlab/parallel.hpp"
#include "nvlab/zeta.hpp"
#include "support/generators.hpp"

namespace {

using namespace nvlab;

PolyMatrix product_operand(std::uint64_t seed) {
  testgen::Rng rng(seed);
  return testgen::random_matrix(rng, 8, 8, 2, 2, 8);
}

PolyMatrix adjugate_operand() {
  testgen::Rng rng(21);
  return testgen::random_matrix(rng, 5, 5, 2, 1, 3);
}

PolyMatrix resolvent_operand() {
  testgen::Rng rng(31);
  return testgen::random_monomial_matrix(rng, 4, 2);
}

/// Every cell of a three-cell wedge covers every cell once, labels by target.
GraphSelfMap full_map() {
  GraphSelfMap m;
  m.group = GradedGroup(1);
  std::vector<Cell> cells(3);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c].name = "c" + std::to_string(c);
    for (std::size_t target = 0; target < cells.size(); ++target) {
      GroupElement label;
      label.h[0] = static_cast<int>(target) - 1;
      cells[c].branches.push_back({target, 1, label});
    }
  }
  m.cells.push_back(std::move(cells));
  return m;
}

template <bool Parallel>
void BM_Multiply(benchmark::State& state) {
  const PolyMatrix a = product_operand(11), b = product_operand(12);
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? multiply(a, b) : multiply_serial(a, b));
}

template <bool Parallel>
void BM_Adjugate(benchmark::State& state) {
  const PolyMatrix m = adjugate_operand();
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? adjugate(m) : adjugate_serial(m));
}

template <bool Parallel>
void BM_ResolventSeries(benchmark::State& state) {
  const PolyMatrix a = resolvent_operand();
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? resolvent_series(a, order) : resolvent_series_serial(a, order));
  }
}

template <bool Parallel>
void BM_OrbitCensus(benchmark::State& state) {
  const GraphSelfMap m = full_map();
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? orbit_census(m, order) : orbit_census_serial(m, order));
}

template <bool Parallel>
void BM_EnumerateGFixed(benchmark::State& state) {
  const GraphSelfMap m = full_map();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? enumerate_gfixed(m, k) : enumerate_gfixed_serial(m, k));
  }
}

BENCHMARK(BM_Multiply<false>)->Name("multiply/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multiply<true>)->Name("multiply/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Adjugate<false>)->Name("adjugate/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Adjugate<true>)->Name("adjugate/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResolventSeries<false>)->Name("resolvent_series/serial")->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResolventSeries<true>)
    ->Name("resolvent_series/parallel")
    ->Arg(20)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_OrbitCensus<false>)->Name("orbit_census/serial")->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitCensus<true>)->Name("orbit_census/parallel")->Arg(9)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateGFixed<false>)->Name("enumerate_gfixed/serial")->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateGFixed<true>)
    ->Name("enumerate_gfixed/parallel")
    ->Arg(10)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(nvlab::max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
