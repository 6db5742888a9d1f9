#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "gnekit/casestudies.hpp"
#include "gnekit/dual_game.hpp"
#include "gnekit/gne.hpp"
#include "gnekit/kernel.hpp"
#include "gnekit/market.hpp"

using namespace gnekit;

static void BM_BestResponse(benchmark::State& state) {
  NetworkGame g = build_counterexample();
  Eigen::VectorXd u(2);
  u << 0.0, 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(1, u, g));
  }
}
BENCHMARK(BM_BestResponse);

static void BM_DualMaximizer(benchmark::State& state) {
  NetworkGame g = build_counterexample();
  Eigen::VectorXd u(2);
  u << 0.0, 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(outer_max_K(1, u, g));
  }
}
BENCHMARK(BM_DualMaximizer);

static void BM_FixedPointSolve(benchmark::State& state) {
  NetworkGame g = build_counterexample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gne_fixed_point(g, Eigen::VectorXd::Zero(2)));
  }
}
BENCHMARK(BM_FixedPointSolve);

static void BM_VariationalSolve(benchmark::State& state) {
  NetworkGame g = build_lq_nonunique('d');
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ve(g));
  }
}
BENCHMARK(BM_VariationalSolve);

static void BM_DualGameSolve(benchmark::State& state) {
  NetworkGame g = build_counterexample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dual_game(g, MultiplierProfile::zeros(g)));
  }
}
BENCHMARK(BM_DualGameSolve);

static void BM_GridCloud(benchmark::State& state) {
  NetworkGame g = build_energy('b');
  GridSpec spec;
  spec.lo = Eigen::VectorXd::Zero(2);
  spec.hi = Eigen::VectorXd::Constant(2, 1.2);
  spec.step = 1.2 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_gne_grid(g, spec));
  }
  state.SetItemsProcessed(state.iterations() * (state.range(0) + 1) * (state.range(0) + 1));
}
BENCHMARK(BM_GridCloud)->Arg(24)->Arg(120);

static void BM_MarketDuality(benchmark::State& state) {
  CournotParams params = pinned_market();
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_cg_bg_duality(params));
  }
}
BENCHMARK(BM_MarketDuality);

BENCHMARK_MAIN();
