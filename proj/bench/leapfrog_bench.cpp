// Serial vs OpenMP leapfrog sweep on the step electric case, which has the
// most work per node.

#include <benchmark/benchmark.h>

#include "kglab/exact_solution.hpp"
#include "kglab/pde_solver.hpp"

namespace {

kg::ExactSolution electric_case() {
  kg::StepElectricCase c;
  c.k = 1.0;
  c.lam = kg::LambdaProfile::ramp(1.0);
  return kg::ExactSolution(c, kg::Window{-2.1, 2.1, -0.1, 1.1});
}

void advance(benchmark::State& state, kg::Execution execution) {
  static const kg::ExactSolution exact = electric_case();
  const auto nx = static_cast<std::size_t>(state.range(0));
  kg::SolverOptions options;
  options.execution = execution;
  const kg::LeapfrogSolver solver(exact, kg::Grid1D::with_courant(-2.0, 2.0, nx, 0.9), options);
  const kg::LeapfrogState start = solver.init_from_exact(0.0);
  kg::LeapfrogState s = start;
  for (auto _ : state) {
    if (s.step == 50) s = start;
    solver.advance(s);
    benchmark::DoNotOptimize(s.curr.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nx + 1));
}

void BM_AdvanceSerial(benchmark::State& state) { advance(state, kg::Execution::kSerial); }
void BM_AdvanceParallel(benchmark::State& state) { advance(state, kg::Execution::kParallel); }

}  // namespace

BENCHMARK(BM_AdvanceSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_AdvanceParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

BENCHMARK_MAIN();
