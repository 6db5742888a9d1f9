#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/validation.hpp"
#include "support/instances.hpp"

using namespace gnekit;

namespace {

// Two scalar players, one vector player of size 2; P1-P2 edge; three constraints.
NetworkGame mixed_game() {
  std::vector<QuadraticCost> costs(3);
  for (int i = 0; i < 3; ++i) {
    costs[static_cast<size_t>(i)].owner = i + 1;
    costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Identity(4, 4);
    costs[static_cast<size_t>(i)].q = Eigen::VectorXd::Zero(4);
  }
  std::vector<AffineConstraint> cons(3);
  for (int m = 0; m < 3; ++m) {
    cons[static_cast<size_t>(m)].index = m + 1;
    cons[static_cast<size_t>(m)].a = Eigen::VectorXd::Constant(4, 1.0);
    cons[static_cast<size_t>(m)].b = 10.0 + m;
  }
  std::vector<AwarenessLevel> awareness;
  awareness.emplace_back(std::vector<int>{1});
  awareness.emplace_back(std::vector<int>{2});
  awareness.emplace_back(std::vector<int>{3});
  std::vector<Box> boxes = {Box::uniform(1, -1.0, 1.0), Box::uniform(1, -2.0, 2.0),
                            Box::uniform(2, -3.0, 3.0)};
  return NetworkGame(NetworkGraph(3, {{1, 2}}), {1, 1, 2}, std::move(costs), std::move(cons),
                     std::move(awareness), std::move(boxes));
}

}  // namespace

TEST_CASE("block layout and accessors") {
  NetworkGame g = mixed_game();
  CHECK(g.player_count() == 3);
  CHECK(g.constraint_count() == 3);
  CHECK(g.joint_dim() == 4);
  CHECK(g.block_size(1) == 1);
  CHECK(g.block_size(3) == 2);
  CHECK(g.block_offset(1) == 0);
  CHECK(g.block_offset(2) == 1);
  CHECK(g.block_offset(3) == 2);
  CHECK(g.cost(2).owner == 2);
  CHECK(g.constraint(3).b == doctest::Approx(12.0));
  CHECK(g.box(3).dim() == 2);

  Eigen::VectorXd lo = g.joint_lo();
  Eigen::VectorXd hi = g.joint_hi();
  CHECK(lo(0) == doctest::Approx(-1.0));
  CHECK(lo(2) == doctest::Approx(-3.0));
  CHECK(hi(1) == doctest::Approx(2.0));
  CHECK(g.in_joint_box(Eigen::VectorXd::Zero(4)));
  Eigen::VectorXd outside = Eigen::VectorXd::Zero(4);
  outside(0) = 1.5;
  CHECK(!g.in_joint_box(outside));
}

TEST_CASE("pooled awareness is the union over the closed neighborhood") {
  NetworkGame g = mixed_game();
  // P1 and P2 share an edge, so each pools the other's declared row.
  CHECK(s_map(g, 1).members() == std::vector<int>{1, 2});
  CHECK(s_map(g, 2).members() == std::vector<int>{1, 2});
  CHECK(s_map(g, 3).members() == std::vector<int>{3});
  CHECK(g.pooled_awareness(1) == s_map(g, 1));
  CHECK(g.local_constraint_indices(2) == std::vector<int>{1, 2});

  auto local = local_constraint_set(g, 1);
  REQUIRE(local.size() == 2);
  CHECK(local[0].index == 1);
  CHECK(local[1].index == 2);

  // Pooling distributes over graph growth: adding an edge unions the levels.
  NetworkGame dense = g.densify({{2, 3}});
  CHECK(s_map(dense, 2).members() == std::vector<int>{1, 2, 3});
  CHECK(s_map(dense, 1).members() == std::vector<int>{1, 2});  // unchanged: no new neighbor
  CHECK(more_aware(s_map(dense, 2), s_map(g, 2)));

  NetworkGame global = g.to_globally_aware();
  for (int i = 1; i <= 3; ++i) {
    CHECK(s_map(global, i) == AwarenessLevel::full(3));
  }
}

TEST_CASE("densification only grows every player's pooled awareness") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    NetworkGame g = instances::small_awareness_game(rng);
    std::vector<std::pair<int, int>> extra;
    for (int i = 1; i <= g.player_count(); ++i) {
      for (int j = i + 1; j <= g.player_count(); ++j) {
        if (instances::uniform(rng, 0.0, 1.0) < 0.5) extra.emplace_back(i, j);
      }
    }
    NetworkGame dense = g.densify(extra);
    for (int i = 1; i <= g.player_count(); ++i) {
      CHECK(more_aware(s_map(dense, i), s_map(g, i)));
    }
  }
}

TEST_CASE("game construction symmetrizes Q; value and gradient match the quadratic form") {
  std::vector<QuadraticCost> costs(2);
  costs[0].owner = 1;
  costs[0].Q = Eigen::MatrixXd(2, 2);
  costs[0].Q << 2.0, 1.0, 0.0, 4.0;  // asymmetric on purpose
  costs[0].q = Eigen::VectorXd(2);
  costs[0].q << -1.0, 0.5;
  costs[0].c = 3.0;
  costs[1].owner = 2;
  costs[1].Q = Eigen::MatrixXd::Identity(2, 2);
  costs[1].q = Eigen::VectorXd::Zero(2);
  NetworkGame g(NetworkGraph(2, {}), {1, 1}, std::move(costs), {},
                {AwarenessLevel{}, AwarenessLevel{}},
                {Box::uniform(1, -5, 5), Box::uniform(1, -5, 5)});

  const QuadraticCost& stored = g.cost(1);
  CHECK((stored.Q - stored.Q.transpose()).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(stored.Q(0, 1) == doctest::Approx(0.5));

  Eigen::VectorXd u(2);
  u << 2.0, -1.0;
  // u'Qu is invariant under symmetrization: value = 0.5 u'Qs u + q'u + c.
  const double expected =
      0.5 * (2.0 * 4.0 + 4.0 * 1.0 + 2.0 * 0.5 * 2.0 * (-1.0)) - 2.0 - 0.5 + 3.0;
  CHECK(stored.eval(u) == doctest::Approx(expected).epsilon(1e-12));
  CHECK((stored.gradient(u) - (stored.Q * u + stored.q)).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("constructor rejects inconsistent shapes") {
  std::vector<QuadraticCost> costs(2);
  for (int i = 0; i < 2; ++i) {
    costs[static_cast<size_t>(i)].owner = i + 1;
    costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Identity(2, 2);
    costs[static_cast<size_t>(i)].q = Eigen::VectorXd::Zero(2);
  }
  std::vector<AffineConstraint> cons(1);
  cons[0].index = 1;
  cons[0].a = Eigen::VectorXd::Ones(2);
  cons[0].b = 1.0;
  std::vector<AwarenessLevel> aware = {AwarenessLevel(std::vector<int>{1}), AwarenessLevel{}};
  std::vector<Box> boxes = {Box::uniform(1, -1, 1), Box::uniform(1, -1, 1)};

  // Baseline builds.
  CHECK_NOTHROW(NetworkGame(NetworkGraph(2, {}), {1, 1}, costs, cons, aware, boxes));

  // Awareness member out of range.
  std::vector<AwarenessLevel> bad_aware = {AwarenessLevel(std::vector<int>{2}), AwarenessLevel{}};
  CHECK_THROWS_AS(NetworkGame(NetworkGraph(2, {}), {1, 1}, costs, cons, bad_aware, boxes),
                  std::invalid_argument);

  // Constraint row dimension mismatch.
  auto bad_cons = cons;
  bad_cons[0].a = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS(NetworkGame(NetworkGraph(2, {}), {1, 1}, costs, bad_cons, aware, boxes),
                  std::invalid_argument);

  // Box dimension disagrees with the declared block size.
  auto bad_boxes = boxes;
  bad_boxes[1] = Box::uniform(2, -1, 1);
  CHECK_THROWS_AS(NetworkGame(NetworkGraph(2, {}), {1, 1}, costs, cons, aware, bad_boxes),
                  std::invalid_argument);

  // Cost matrix over the wrong joint dimension.
  auto bad_costs = costs;
  bad_costs[0].Q = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(NetworkGame(NetworkGraph(2, {}), {1, 1}, bad_costs, cons, aware, boxes),
                  std::invalid_argument);
}

TEST_CASE("validation flags the right defects") {
  std::mt19937 rng(5);
  NetworkGame good = instances::contraction_game(rng);
  ValidationReport rep = validate(good);
  CHECK(rep.ok());

  auto find = [](const ValidationReport& r, const std::string& name) -> const ValidationCheck& {
    auto it = std::find_if(r.checks.begin(), r.checks.end(),
                           [&](const ValidationCheck& c) { return c.name == name; });
    REQUIRE(it != r.checks.end());
    return *it;
  };

  // Connectivity is advisory: a disconnected game can still be valid.
  const ValidationCheck& conn = find(rep, "graph_connected");
  CHECK(!conn.fatal);

  // Nonconvex own block trips the convexity check.
  {
    std::vector<QuadraticCost> costs(2);
    costs[0].owner = 1;
    costs[0].Q = Eigen::MatrixXd::Identity(2, 2);
    costs[0].Q(0, 0) = -1.0;
    costs[0].q = Eigen::VectorXd::Zero(2);
    costs[1].owner = 2;
    costs[1].Q = Eigen::MatrixXd::Identity(2, 2);
    costs[1].q = Eigen::VectorXd::Zero(2);
    NetworkGame bad(NetworkGraph(2, {}), {1, 1}, std::move(costs), {},
                    {AwarenessLevel{}, AwarenessLevel{}},
                    {Box::uniform(1, -1, 1), Box::uniform(1, -1, 1)});
    ValidationReport r = validate(bad);
    CHECK(!r.ok());
    CHECK(!find(r, "own_block_convex").passed);
  }

  // A constraint nobody is aware of trips collective awareness.
  {
    std::vector<QuadraticCost> costs(2);
    for (int i = 0; i < 2; ++i) {
      costs[static_cast<size_t>(i)].owner = i + 1;
      costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Identity(2, 2);
      costs[static_cast<size_t>(i)].q = Eigen::VectorXd::Zero(2);
    }
    std::vector<AffineConstraint> cons(1);
    cons[0].index = 1;
    cons[0].a = Eigen::VectorXd::Ones(2);
    cons[0].b = 1.0;
    NetworkGame bad(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                    {AwarenessLevel{}, AwarenessLevel{}},
                    {Box::uniform(1, -1, 1), Box::uniform(1, -1, 1)});
    ValidationReport r = validate(bad);
    CHECK(!r.ok());
    CHECK(!find(r, "collective_awareness").passed);
  }

  // Jointly infeasible constraints against the boxes are fatal.
  {
    std::vector<QuadraticCost> costs(2);
    for (int i = 0; i < 2; ++i) {
      costs[static_cast<size_t>(i)].owner = i + 1;
      costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Identity(2, 2);
      costs[static_cast<size_t>(i)].q = Eigen::VectorXd::Zero(2);
    }
    std::vector<AffineConstraint> cons(1);
    cons[0].index = 1;
    cons[0].a = Eigen::VectorXd::Ones(2);
    cons[0].b = -5.0;  // u1 + u2 <= -5 impossible in [-1, 1]^2
    NetworkGame bad(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                    {AwarenessLevel(std::vector<int>{1}), AwarenessLevel{}},
                    {Box::uniform(1, -1, 1), Box::uniform(1, -1, 1)});
    ValidationReport r = validate(bad);
    CHECK(!r.ok());
    CHECK(!find(r, "jointly_feasible").passed);
  }
}
