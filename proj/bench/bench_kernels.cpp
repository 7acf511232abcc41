#include <benchmark/benchmark.h>

#include "cqed/runner.hpp"

using namespace cqed;

namespace {

const PotentialModel kSteep = DoubleWell{50.0, 95.0};
constexpr double kOmega = 8.53;

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_RadAssembly(benchmark::State& st) {
  for (auto _ : st) {
    GaugeHamiltonian h = build_rad_single(kSteep, 3.0, int(st.range(1)), 1.0, kOmega, kOmega, 20, mode(st));
    benchmark::DoNotOptimize(h);
  }
  label(st);
}
BENCHMARK(BM_RadAssembly)->Args({0, 100})->Args({1, 100})->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);

void BM_PfAssembly(benchmark::State& st) {
  const RealGrid grid(1024, 8.0);
  const MatterSolution sol = matter_eigenstates(dvr_hamiltonian(grid, kSteep, 1.0), 50, grid);
  const double A0 = vector_potential_for_gamma(kOmega, kOmega, -1.0, 1.0);
  for (auto _ : st) {
    GaugeHamiltonian h = build_pf(sol, kOmega, A0, 50, int(st.range(1)), PfStorage::Dense, mode(st));
    benchmark::DoNotOptimize(h);
  }
  label(st);
}
BENCHMARK(BM_PfAssembly)->Args({0, 40})->Args({1, 40})->Args({0, 80})->Args({1, 80})->Unit(benchmark::kMillisecond);

void BM_CouplingSweep(benchmark::State& st) {
  Problem p;
  p.model = Cosine{-1.0, 2.0 * kPi};
  p.omega_c = 2.0;
  SweepSpec s;
  s.gauge = Gauge::RAD;
  s.rung = {33, 10};
  s.n_eigs = 6;
  s.points = log_coupling_axis(0.1, 10.0, 8);
  s.exec = mode(st);
  for (auto _ : st) {
    SweepResult r = run_points(p, s);
    benchmark::DoNotOptimize(r);
  }
  label(st);
}
BENCHMARK(BM_CouplingSweep)->Args({0, 0})->Args({1, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
