#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gnekit/casestudies.hpp"
#include "gnekit/kernel.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"

using namespace gnekit;

TEST_CASE("partial gradients match central finite differences") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    NetworkGame g = trial % 2 == 0 ? instances::contraction_game(rng)
                                   : instances::small_awareness_game(rng);
    Eigen::VectorXd u = brute::random_in_box(g, rng);
    for (int i = 1; i <= g.player_count(); ++i) {
      Eigen::VectorXd grad = partial_gradient(i, u, g);
      Eigen::VectorXd fd = brute::fd_partial_gradient(i, u, g);
      CHECK((grad - fd).lpNorm<Eigen::Infinity>() <= 1e-6);
      CHECK(check_gradient(i, u, g) <= 1e-6);
    }
    // The stacked map is exactly the per-player gradients in block order.
    Eigen::VectorXd F = stacked_gradient(u, g);
    for (int i = 1; i <= g.player_count(); ++i) {
      Eigen::VectorXd block = F.segment(g.block_offset(i), g.block_size(i));
      CHECK((block - partial_gradient(i, u, g)).lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("cost and constraint evaluation on the bundled two-player study") {
  NetworkGame g = build_counterexample();
  Eigen::VectorXd u(2);
  u << -1.0, 2.0;
  // f1 = 0.5 u1^2 - u1, f2 = 0.5 u2^2 - 2 u2.
  CHECK(eval_cost(1, u, g) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(eval_cost(2, u, g) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(eval_constraint(1, u, g) == doctest::Approx(0.0).epsilon(1e-12));

  // L_1(v1; u, mu) = f1(v1) + mu (v1 + u2 - 1), frozen at v1 = -1, u2 = 2, mu = 2.
  Eigen::VectorXd v1(1);
  v1 << -1.0;
  Eigen::VectorXd mu(1);
  mu << 2.0;
  CHECK(eval_lagrangian_i(1, v1, u, mu, g) == doctest::Approx(1.5).epsilon(1e-12));
  // mu = 0 drops the constraint term.
  CHECK(eval_lagrangian_i(1, v1, u, Eigen::VectorXd::Zero(1), g) ==
        doctest::Approx(1.5).epsilon(1e-12));
  // At v1 = 0 the budget slack is u2 - 1 = 1, so mu = 2 adds 2.
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(1);
  CHECK(eval_lagrangian_i(1, v0, u, mu, g) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("best response matches the scalar closed form on the bundled study") {
  NetworkGame g = build_counterexample();

  // Player 1 vs u2: minimize 0.5 v^2 - v subject to v <= 1 - u2 and the box.
  for (double u2 : {-1.0, 0.0, 0.5, 2.0, 5.0}) {
    Eigen::VectorXd u(2);
    u << 0.0, u2;
    BestResponseResult br = best_response(1, u, g);
    REQUIRE(br.status == BestResponseResult::Status::kSolved);
    auto oracle = brute::scalar_interval_min(1.0, -1.0, -100.0, 100.0, {1.0}, {1.0 - u2});
    REQUIRE(oracle.has_value());
    CHECK(br.minimizer(0) == doctest::Approx(*oracle).epsilon(1e-9));
    CHECK(br.kkt_residual <= 1e-8);
  }

  // Player 2 is unaware of the budget: its response is the unconstrained argmin 2.
  Eigen::VectorXd u(2);
  u << -1.0, 0.0;
  BestResponseResult br2 = best_response(2, u, g);
  REQUIRE(br2.status == BestResponseResult::Status::kSolved);
  CHECK(br2.minimizer(0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(br2.active_set.empty());
}

TEST_CASE("best response is never beaten by random feasible probes") {
  std::mt19937 rng(23);
  int compared = 0;
  for (int trial = 0; trial < 25; ++trial) {
    NetworkGame g = instances::contraction_game(rng);
    Eigen::VectorXd u = brute::random_in_box(g, rng);
    for (int i = 1; i <= g.player_count(); ++i) {
      BestResponseResult br = best_response(i, u, g);
      REQUIRE(br.status == BestResponseResult::Status::kSolved);
      Eigen::VectorXd w = u;
      w.segment(g.block_offset(i), g.block_size(i)) = br.minimizer;
      for (int m : g.local_constraint_indices(i)) {
        CHECK(eval_constraint(m, w, g) <= 1e-7);
      }
      const double reported = eval_cost(i, w, g);
      const double probed = brute::probe_best_cost(i, u, g, 1000, rng);
      CHECK(reported <= probed + 1e-8);
      ++compared;
    }
  }
  CHECK(compared >= 50);
}

TEST_CASE("a violated row outside the player's control makes the slice infeasible") {
  // P1 is aware of u2 <= -2 but cannot move u2.
  std::vector<QuadraticCost> costs(2);
  for (int i = 0; i < 2; ++i) {
    costs[static_cast<size_t>(i)].owner = i + 1;
    costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Identity(2, 2);
    costs[static_cast<size_t>(i)].q = Eigen::VectorXd::Zero(2);
  }
  std::vector<AffineConstraint> cons(1);
  cons[0].index = 1;
  cons[0].a = Eigen::VectorXd(2);
  cons[0].a << 0.0, 1.0;
  cons[0].b = -2.0;
  NetworkGame g(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                {AwarenessLevel(std::vector<int>{1}), AwarenessLevel{}},
                {Box::uniform(1, -5, 5), Box::uniform(1, -5, 5)});

  Eigen::VectorXd u(2);
  u << 0.0, 0.0;  // u2 = 0 violates u2 <= -2
  BestResponseResult br = best_response(1, u, g);
  CHECK(br.status == BestResponseResult::Status::kInfeasible);

  u(1) = -3.0;  // satisfied: the slice is the whole box again
  BestResponseResult ok = best_response(1, u, g);
  REQUIRE(ok.status == BestResponseResult::Status::kSolved);
  CHECK(ok.minimizer(0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("augmented Lagrangian sums the per-player terms") {
  std::mt19937 rng(31);
  NetworkGame g = instances::contraction_game(rng);
  StrategyProfile u = StrategyProfile::from_flat(g, brute::random_in_box(g, rng));
  StrategyProfile v = StrategyProfile::from_flat(g, brute::random_in_box(g, rng));
  MultiplierProfile mu = MultiplierProfile::zeros(g);
  for (int i = 1; i <= g.player_count(); ++i) {
    for (Eigen::Index k = 0; k < mu.of(i).size(); ++k) {
      mu.of(i)(k) = instances::uniform(rng, 0.0, 2.0);
    }
  }
  double total = 0.0;
  for (int i = 1; i <= g.player_count(); ++i) {
    total += eval_lagrangian_i(i, Eigen::VectorXd(v.block(i)), u.flat(), mu.of(i), g);
  }
  CHECK(eval_augmented_lagrangian(v, u, mu, g) == doctest::Approx(total).epsilon(1e-12));
}
