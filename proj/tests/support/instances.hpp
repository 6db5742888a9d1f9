#pragma once

// Deterministic random instance families used by the property and acceptance tests.
// Construction guarantees are part of the tests' contracts:
//  - contraction_game: scalar players, best-response slopes <= 0.5 in every regime,
//    strictly convex costs, own-coefficient-dominant constraint rows, origin strictly
//    feasible, and every player's feasible slice nonempty anywhere in the box.
//  - small_awareness_game: tiny scalar games with arbitrary awareness patterns for
//    grid-based inclusion checks; feasibility is not guaranteed and not needed.
//  - symmetric_cournot: market parameters with the delivery floor active at the
//    symmetric equilibrium.

#include <random>
#include <utility>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/market.hpp"

namespace instances {

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Scalar-block game on n in {2,3} players whose damped best-response iteration is a
// contraction (unique equilibrium). Each player owns at most one constraint row with
// own coefficient in +-[1, 1.5] and total rival weight <= 0.5, and enforces only its
// own row on an edgeless graph: the clamp bound then depends on rivals with total
// slope <= 0.5, so the constrained best-response map stays a 0.5-contraction in the
// infinity norm. Right sides in [0.1, 1] keep the origin strictly feasible; boxes
// [-10, 10] keep every owner's slice nonempty (own reach 10 beats 1 + 0.5 * 10).
inline gnekit::NetworkGame contraction_game(std::mt19937& rng) {
  const int n = uniform_int(rng, 2, 3);

  std::vector<gnekit::QuadraticCost> costs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    gnekit::QuadraticCost& cost = costs[static_cast<size_t>(i)];
    cost.owner = i + 1;
    cost.Q = Eigen::MatrixXd::Zero(n, n);
    const double own = uniform(rng, 2.0, 4.0);
    cost.Q(i, i) = own;
    // Split at most half the own curvature across the rivals.
    double budget = 0.5 * own;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = uniform(rng, -budget / (n - 1), budget / (n - 1));
      cost.Q(i, j) = cost.Q(j, i) = w;
    }
    cost.q = Eigen::VectorXd::Zero(n);
    cost.q(i) = uniform(rng, -2.0, 2.0);
  }

  std::vector<gnekit::AffineConstraint> cons;
  std::vector<gnekit::AwarenessLevel> awareness;
  std::vector<std::vector<int>> aware_members(static_cast<size_t>(n));
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (uniform(rng, 0.0, 1.0) < 0.3) continue;  // some players own no row
    gnekit::AffineConstraint con;
    con.index = ++m;
    con.a = Eigen::VectorXd::Zero(n);
    const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    con.a(i) = sign * uniform(rng, 1.0, 1.5);
    double budget = 0.5;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = uniform(rng, -budget / (n - 1), budget / (n - 1));
      con.a(j) = w;
    }
    con.b = uniform(rng, 0.1, 1.0);
    cons.push_back(std::move(con));
    // Only the owner enforces its row; a rival with a small cross coefficient would
    // face clamp bounds steeper than the contraction allows.
    aware_members[static_cast<size_t>(i)].push_back(m);
  }
  for (int i = 0; i < n; ++i) {
    awareness.emplace_back(aware_members[static_cast<size_t>(i)]);
  }

  std::vector<gnekit::Box> boxes(static_cast<size_t>(n),
                                 gnekit::Box::uniform(1, -10.0, 10.0));
  std::vector<int> sizes(static_cast<size_t>(n), 1);
  return gnekit::NetworkGame(gnekit::NetworkGraph(n, {}), std::move(sizes),
                             std::move(costs), std::move(cons), std::move(awareness),
                             std::move(boxes));
}

// Small scalar game with arbitrary awareness for sparse-vs-dense grid inclusion.
inline gnekit::NetworkGame small_awareness_game(std::mt19937& rng) {
  const int n = uniform_int(rng, 2, 4);
  const int M = uniform_int(rng, 2, 4);

  std::vector<gnekit::QuadraticCost> costs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    gnekit::QuadraticCost& cost = costs[static_cast<size_t>(i)];
    cost.owner = i + 1;
    cost.Q = Eigen::MatrixXd::Zero(n, n);
    const double own = uniform(rng, 1.0, 3.0);
    cost.Q(i, i) = own;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = uniform(rng, -0.5, 0.5) * own / (n - 1);
      cost.Q(i, j) = cost.Q(j, i) = w;
    }
    cost.q = Eigen::VectorXd::Zero(n);
    cost.q(i) = uniform(rng, -0.5, 0.5);
  }

  std::vector<gnekit::AffineConstraint> cons(static_cast<size_t>(M));
  for (int m = 0; m < M; ++m) {
    cons[static_cast<size_t>(m)].index = m + 1;
    cons[static_cast<size_t>(m)].a = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
      cons[static_cast<size_t>(m)].a(j) = uniform(rng, -1.0, 1.0);
    }
    cons[static_cast<size_t>(m)].b = uniform(rng, -0.2, 0.8);
  }

  // Random awareness, then force union coverage by assigning any orphan row to a
  // random player.
  std::vector<std::vector<int>> aware_members(static_cast<size_t>(n));
  std::vector<bool> covered(static_cast<size_t>(M), false);
  for (int i = 0; i < n; ++i) {
    for (int m = 1; m <= M; ++m) {
      if (uniform(rng, 0.0, 1.0) < 0.4) {
        aware_members[static_cast<size_t>(i)].push_back(m);
        covered[static_cast<size_t>(m - 1)] = true;
      }
    }
  }
  for (int m = 1; m <= M; ++m) {
    if (!covered[static_cast<size_t>(m - 1)]) {
      aware_members[static_cast<size_t>(uniform_int(rng, 0, n - 1))].push_back(m);
    }
  }
  std::vector<gnekit::AwarenessLevel> awareness;
  for (int i = 0; i < n; ++i) {
    awareness.emplace_back(aware_members[static_cast<size_t>(i)]);
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (uniform(rng, 0.0, 1.0) < 0.25) edges.emplace_back(i, j);
    }
  }

  std::vector<gnekit::Box> boxes(static_cast<size_t>(n),
                                 gnekit::Box::uniform(1, -10.0, 10.0));
  std::vector<int> sizes(static_cast<size_t>(n), 1);
  return gnekit::NetworkGame(gnekit::NetworkGraph(n, std::move(edges)), std::move(sizes),
                             std::move(costs), std::move(cons), std::move(awareness),
                             std::move(boxes));
}

// Symmetric market draw whose delivery floor binds at the symmetric equilibrium:
// q > 2 alpha / (2k + 3 beta) makes the floor active and the multiplier positive.
inline gnekit::CournotParams symmetric_cournot(std::mt19937& rng) {
  gnekit::CournotParams p;
  p.alpha = uniform(rng, 0.5, 5.0);
  p.beta = uniform(rng, 0.2, 2.0);
  p.k1 = p.k2 = uniform(rng, 0.5, 3.0);
  p.q1 = p.q2 = 2.0 * p.alpha / (2.0 * p.k1 + 3.0 * p.beta) + uniform(rng, 0.5, 2.0);
  return p;
}

}  // namespace instances
