#include <benchmark/benchmark.h>

#include <string>

#include "netfail/estimators.hpp"
#include "netfail/experiment.hpp"
#include "netfail/gaussian.hpp"
#include "netfail/lp.hpp"
#include "netfail/shortfall.hpp"

namespace {

using namespace netfail;

struct Fixture {
  ExperimentConfig config;
  GaussianModel model;
  ScaledInstance instance;

  Fixture(const std::string& name, double n)
      : config(preset(name)),
        model(GaussianModel::from_network(config.network)),
        instance(scale_instance(config.network, n, config.threshold)) {}
};

const Fixture& fixture(int which) {
  static const Fixture f1("example1", 3.2);
  static const Fixture f2("example2", 1.3);
  static const Fixture f3("example3", 1.7);
  return which == 1 ? f1 : which == 2 ? f2 : f3;
}

// Overloaded demand so the dual LP needs real pivots.
Vector stressed_demand(const Fixture& f, RngStream& rng) {
  Vector d = sample_demand(f.model, rng);
  d += 0.9 * (f.instance.supply - f.model.mean);
  d[0] = f.instance.supply[0] + 1.0;
  return d;
}

void BM_DualSolve(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  RngStream rng(1, 1);
  Vector d = stressed_demand(f, rng);
  LpProblem p = build_dual(f.instance, d);
  SimplexSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(p).objective);
}
BENCHMARK(BM_DualSolve)->Arg(1)->Arg(2)->Arg(3);

void BM_PrimalSolve(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  RngStream rng(1, 1);
  Vector d = stressed_demand(f, rng);
  if (primal_infeasible(f.instance, d)) d *= 0.5;
  LpProblem p = build_primal(f.instance, d);
  SimplexSolver solver;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(p).objective);
}
BENCHMARK(BM_PrimalSolve)->Arg(1)->Arg(2)->Arg(3);

void BM_Replication(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  Method method = static_cast<Method>(state.range(1));
  ReplicationKernel kernel(f.model, f.instance);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream rng(42, stream_id(1, i++));
    benchmark::DoNotOptimize(kernel.run(method, rng));
  }
  state.SetLabel(std::string(method_name(method)));
}
BENCHMARK(BM_Replication)
    ->ArgsProduct({{1, 2, 3}, {0, 1, 2}});

void BM_RadialRoot(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<int>(state.range(0)));
  RadialRootFinder finder(f.model, f.instance);
  RngStream rng(7, 7);
  const int d = f.model.dimension();
  for (auto _ : state) {
    Vector psi = sample_angle(d, rng);
    benchmark::DoNotOptimize(finder.root(psi));
  }
}
BENCHMARK(BM_RadialRoot)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
