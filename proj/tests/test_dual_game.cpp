#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gnekit/casestudies.hpp"
#include "gnekit/dual_game.hpp"
#include "gnekit/gne.hpp"
#include "gnekit/kernel.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"

using namespace gnekit;

TEST_CASE("inner minimizer matches the closed form on the bundled study") {
  NetworkGame g = build_counterexample();
  Eigen::VectorXd u(2);
  u << 0.0, 2.0;

  // L_1(v; mu) = 0.5 v^2 - v + mu (v + u2 - 1) has minimizer v = 1 - mu.
  for (double mu : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    Eigen::VectorXd mu_v(1);
    mu_v << mu;
    Eigen::VectorXd v = inner_min_T(1, u, mu_v, g);
    CHECK(v(0) == doctest::Approx(1.0 - mu).epsilon(1e-9));
  }

  // Player 2 pools no constraints, so its multiplier block is empty and the inner
  // minimizer is the plain argmin 2.
  Eigen::VectorXd v2 = inner_min_T(2, u, Eigen::VectorXd(0), g);
  CHECK(v2(0) == doctest::Approx(2.0).epsilon(1e-9));

  // Box clamping: a huge multiplier pushes player 1 to its lower bound.
  Eigen::VectorXd big(1);
  big << 1000.0;
  CHECK(inner_min_T(1, u, big, g)(0) == doctest::Approx(-100.0).epsilon(1e-9));
}

TEST_CASE("strategy fixed point at held multipliers hits the frozen profiles") {
  NetworkGame g = build_counterexample();
  MultiplierProfile mu = MultiplierProfile::zeros(g);

  InnerFixedPoint at_zero = inner_fixed_point_V(mu, g, Eigen::VectorXd::Zero(2));
  REQUIRE(at_zero.converged);
  CHECK(at_zero.profile.flat()(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(at_zero.profile.flat()(1) == doctest::Approx(2.0).epsilon(1e-8));

  mu.of(1)(0) = 1.0;
  InnerFixedPoint at_one = inner_fixed_point_V(mu, g, Eigen::VectorXd::Zero(2));
  REQUIRE(at_one.converged);
  CHECK(at_one.profile.flat()(0) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(at_one.profile.flat()(1) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("the dual maximizer certifies strong duality against the primal solve") {
  NetworkGame g = build_counterexample();
  Eigen::VectorXd u(2);
  u << 0.0, 2.0;

  OuterMaxResult outer = outer_max_K(1, u, g);
  REQUIRE(outer.status == OuterMaxResult::Status::kSolved);
  REQUIRE(outer.mu.size() == 1);
  CHECK(outer.mu(0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(outer.dual_value == doctest::Approx(1.5).epsilon(1e-8));

  BestResponseResult br = best_response(1, u, g);
  REQUIRE(br.status == BestResponseResult::Status::kSolved);
  CHECK(br.minimizer(0) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(outer.dual_value == doctest::Approx(br.objective_value).epsilon(1e-8));
  CHECK((outer.mu - br.multipliers).lpNorm<Eigen::Infinity>() <= 1e-8);

  // The dual of a player with no pooled constraints is the plain minimum.
  OuterMaxResult trivial = outer_max_K(2, u, g);
  REQUIRE(trivial.status == OuterMaxResult::Status::kSolved);
  CHECK(trivial.mu.size() == 0);
  CHECK(trivial.dual_value == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("no duality gap on random contraction games") {
  std::mt19937 rng(67);
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    NetworkGame g = instances::contraction_game(rng);
    Eigen::VectorXd u = brute::random_in_box(g, rng);
    for (int i = 1; i <= g.player_count(); ++i) {
      BestResponseResult br = best_response(i, u, g);
      if (br.status != BestResponseResult::Status::kSolved) continue;
      OuterMaxResult outer = outer_max_K(i, u, g);
      REQUIRE(outer.status == OuterMaxResult::Status::kSolved);
      CHECK(outer.dual_value == doctest::Approx(br.objective_value).epsilon(1e-8));
      // The dual maximizer reproduces the primal minimizer through the inner map.
      Eigen::VectorXd v = inner_min_T(i, u, outer.mu, g);
      CHECK((v - br.minimizer).lpNorm<Eigen::Infinity>() <= 1e-6);
      ++compared;
    }
  }
  CHECK(compared >= 40);
}

TEST_CASE("an uncontrollable violated row makes the dual unbounded") {
  // P1 is aware of u2 <= -2 but u2 is not its variable: the Lagrangian grows without
  // bound in the multiplier, which the maximizer reports as an empty feasible slice.
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
  u << 0.0, 0.0;  // u2 = 0 violates the row
  OuterMaxResult bad = outer_max_K(1, u, g);
  CHECK(bad.status == OuterMaxResult::Status::kInfeasible);

  u(1) = -3.0;  // satisfied: multiplier stays at zero and the dual is the plain min
  OuterMaxResult ok = outer_max_K(1, u, g);
  REQUIRE(ok.status == OuterMaxResult::Status::kSolved);
  CHECK(ok.mu(0) == doctest::Approx(0.0).epsilon(1e-9));
  // f1 = 0.5 (v^2 + u2^2) with u2 = -3 held fixed: min over v is 4.5.
  CHECK(ok.dual_value == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("direct minimax construction reaches the certified equilibrium") {
  NetworkGame g = build_counterexample();
  EquilibriumReport mm = solve_minimax_gne(g, Eigen::VectorXd::Zero(2));
  REQUIRE(mm.converged);
  CHECK(mm.profile.flat()(0) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(mm.profile.flat()(1) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(bool(mm.certificate));
  CHECK(mm.multipliers.of(1)(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(mm.worst_kkt_residual <= 1e-8);
  CHECK(mm.complementarity_residual <= 1e-8);
  CHECK(mm.active_constraints == std::vector<int>{1});
}

TEST_CASE("two-layer decomposition agrees with the minimax point and values") {
  NetworkGame g = build_counterexample();
  DualGameResult dual = solve_dual_game(g, MultiplierProfile::zeros(g));
  REQUIRE(dual.converged);
  CHECK(dual.profile.flat()(0) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(dual.profile.flat()(1) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(dual.mu.of(1)(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(bool(dual.certificate));
  CHECK(dual.complementarity_residual <= 1e-8);
  // Sum of the per-player Lagrangians at the saddle: 1.5 + (-2.0).
  CHECK(dual.dual_value == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("randomized equivalence of the two constructions") {
  NetworkGame g = build_counterexample();
  DualEquivalenceReport rep = check_dual_equivalence(g, 5, 911);
  CHECK(rep.trials == 5);
  CHECK(rep.converged_pairs == 5);
  CHECK(rep.ok);
  CHECK(rep.max_profile_gap <= 1e-6);
  CHECK(rep.max_multiplier_identity_gap <= 1e-6);
  CHECK(rep.max_strategy_identity_gap <= 1e-6);
  CHECK(rep.all_certified);

  std::mt19937 rng(73);
  for (int trial = 0; trial < 5; ++trial) {
    NetworkGame rnd = instances::contraction_game(rng);
    DualEquivalenceReport r = check_dual_equivalence(rnd, 2, 1000 + static_cast<unsigned>(trial));
    CHECK(r.ok);
  }
}

TEST_CASE("solver options are validated") {
  NetworkGame g = build_counterexample();
  SolveOptions bad;
  bad.damping = 0.0;
  CHECK_THROWS_AS(solve_dual_game(g, MultiplierProfile::zeros(g), bad), std::invalid_argument);
  bad.damping = 1.5;
  CHECK_THROWS_AS(solve_dual_game(g, MultiplierProfile::zeros(g), bad), std::invalid_argument);
}
