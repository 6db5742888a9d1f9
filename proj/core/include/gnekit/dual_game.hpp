#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/gne.hpp"
#include "gnekit/kernel.hpp"
#include "gnekit/profile.hpp"

namespace gnekit {

/// Lagrangian minimizer for player i at fixed multipliers: argmin over the player's box
/// of L_i(v, u_{-i}; mu_i). The shared constraints enter through the multiplier term
/// only, so this is a box-constrained QP. Block i of u is ignored.
Eigen::VectorXd inner_min_T(int i, const Eigen::VectorXd& u, const Eigen::VectorXd& mu_i,
                            const NetworkGame& game, const KernelOptions& opts = {});

struct InnerFixedPoint {
  StrategyProfile profile;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::vector<std::string> warnings;
};

/// Damped simultaneous iteration of inner_min_T at fixed multipliers. The joint map is
/// not contractive for every game; stalls are detected and reported rather than spun on.
InnerFixedPoint inner_fixed_point_V(const MultiplierProfile& mu, const NetworkGame& game,
                                    const Eigen::VectorXd& start, const SolveOptions& opts = {});

struct OuterMaxResult {
  enum class Status { kSolved, kInfeasible, kNotConverged };

  Status status = Status::kNotConverged;
  Eigen::VectorXd mu;  // aligned with local_constraint_indices(i)
  double dual_value = 0.0;
  std::vector<std::string> warnings;
};

/// Maximize player i's dual function mu -> min_v L_i(v, u_{-i}; mu) over mu >= 0.
/// The concave piecewise-quadratic dual is explored by enumerating box-activity
/// patterns of the inner minimizer; every candidate is re-evaluated through the exact
/// inner minimization before it is accepted. An unbounded dual (the player's feasible
/// slice is empty) reports kInfeasible.
OuterMaxResult outer_max_K(int i, const Eigen::VectorXd& u, const NetworkGame& game,
                           const KernelOptions& opts = {});

struct DualGameResult {
  MultiplierProfile mu;
  StrategyProfile profile;  // inner minimizers at the final multipliers
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double dual_value = 0.0;  // sum of per-player dual values at the solution
  double complementarity_residual = 0.0;
  std::vector<std::string> warnings;
  GneCertificate certificate;
};

/// Two-layer decomposition: an outer damped iteration on the multipliers through
/// K(V(mu)) with a warm-started inner fixed point on the strategies at fixed
/// multipliers. A player whose dual is unbounded keeps its multipliers frozen and the
/// result carries a warning.
DualGameResult solve_dual_game(const NetworkGame& game, const MultiplierProfile& start_mu,
                               const SolveOptions& opts = {});

struct DualEquivalenceReport {
  int trials = 0;
  int converged_pairs = 0;
  double max_profile_gap = 0.0;
  double max_multiplier_identity_gap = 0.0;  // |K_i(u*) - mu*_i| at the minimax point
  double max_strategy_identity_gap = 0.0;    // |T_i(u*, mu*_i) - u*_i|
  double max_complementarity = 0.0;
  bool all_certified = true;  // every converged output passed is_gne
  bool ok = false;
  std::vector<std::string> warnings;
};

/// Randomized agreement check between the direct minimax construction and the
/// two-layer dual decomposition: both run from random starts (strategies uniform in the
/// boxes, multipliers uniform in [0, 2]) and must land on the same certified
/// equilibrium, with the fixed-point identities holding there.
DualEquivalenceReport check_dual_equivalence(const NetworkGame& game, int trials,
                                             unsigned seed, const SolveOptions& opts = {});

}  // namespace gnekit
