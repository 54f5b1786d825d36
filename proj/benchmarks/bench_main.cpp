#include <benchmark/benchmark.h>

#include "degenlag/analysis.hpp"
#include "degenlag/modified.hpp"
#include "degenlag/systems.hpp"

using namespace degenlag;

namespace {

const PointVortexSystem& leapfrog() {
  static const PointVortexSystem s({1.0, -1.0, 2.0, -2.0});
  return s;
}

const Vector& leapfrog_state() {
  static const Vector z{{1.0, 1.0, 1.0, -1.0, 2.0, 1.0, 2.0, -1.0}};
  return z;
}

void BM_PendulumStep(benchmark::State& state) {
  const auto method = static_cast<MethodId>(state.range(0));
  const ToySeparable p = make_pendulum();
  const Vector qm{{3.0, 0.0}};
  const Vector q = integrate(method, p, qm, 0.35, 1).trajectory.points[1];
  for (auto _ : state) benchmark::DoNotOptimize(step(method, p, qm, q, 0.35));
}
BENCHMARK(BM_PendulumStep)->Arg(0)->Arg(1);

void BM_VortexStep(benchmark::State& state) {
  const auto method = static_cast<MethodId>(state.range(0));
  const Vector& z0 = leapfrog_state();
  const Vector z1 = integrate(method, leapfrog(), z0, 0.5, 1).trajectory.points[1];
  for (auto _ : state) benchmark::DoNotOptimize(step(method, leapfrog(), z0, z1, 0.5));
}
BENCHMARK(BM_VortexStep)->Arg(0)->Arg(1);

void BM_PrincipalFieldPendulum(benchmark::State& state) {
  const ToySeparable p = make_pendulum();
  const Vector q{{1.5, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(principal_field(MethodId::Midpoint, p, q, 0.1, TruncationOrder::Two));
}
BENCHMARK(BM_PrincipalFieldPendulum);

void BM_PrincipalFieldVortex(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        principal_field(MethodId::Midpoint, leapfrog(), leapfrog_state(), 0.1, TruncationOrder::Two));
  }
}
BENCHMARK(BM_PrincipalFieldVortex);

void BM_DefectOrder(benchmark::State& state) {
  const ToySeparable p = make_pendulum();
  for (auto _ : state) {
    benchmark::DoNotOptimize(defect_order(MethodId::Midpoint, p, TruncationOrder::Two, Vector{{1.5, 0.0}}, 2.0,
                                          {0.2, 0.1, 0.05}));
  }
}
BENCHMARK(BM_DefectOrder)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
