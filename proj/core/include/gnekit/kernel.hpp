#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/profile.hpp"
#include "gnekit/qp.hpp"

namespace gnekit {

/// Player i's cost at the joint profile.
double eval_cost(int i, const Eigen::VectorXd& u, const NetworkGame& game);

/// Shared constraint value g_m(u) = a_m' u - b_m (feasible when <= 0).
double eval_constraint(int m, const Eigen::VectorXd& u, const NetworkGame& game);

/// Gradient of f_i with respect to player i's own block.
Eigen::VectorXd partial_gradient(int i, const Eigen::VectorXd& u, const NetworkGame& game);

/// All partial gradients stacked in player order (the game map used by the
/// variational formulation).
Eigen::VectorXd stacked_gradient(const Eigen::VectorXd& u, const NetworkGame& game);

struct KernelOptions {
  QpOptions qp;
};

struct BestResponseResult {
  enum class Status { kSolved, kInfeasible, kNotConverged };
  Status status = Status::kNotConverged;
  Eigen::VectorXd minimizer;    // player i's block only
  std::vector<int> active_set;  // 1-based indices of tight local constraints
  Eigen::VectorXd multipliers;  // aligned with local_constraint_indices(i)
  double objective_value = 0.0;
  double kkt_residual = 0.0;
};

/// Minimize f_i over player i's block with the other blocks held at u, subject to the
/// constraints player i is (effectively) aware of, restricted to its block, plus its
/// box. A local constraint whose own-block coefficients vanish still participates: if
/// the fixed blocks violate it, the slice is infeasible and the result says so.
BestResponseResult best_response(int i, const Eigen::VectorXd& u, const NetworkGame& game,
                                 const KernelOptions& opts = {});

/// L_i(v_i, u_{-i}; mu_i) = f_i + mu_i' g_local, every term evaluated at the profile u
/// with block i replaced by v_i. mu_i is aligned with local_constraint_indices(i).
double eval_lagrangian_i(int i, const Eigen::VectorXd& v_i, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& mu_i, const NetworkGame& game);

/// Sum over players of eval_lagrangian_i with trial blocks v against the profile u.
double eval_augmented_lagrangian(const StrategyProfile& v, const StrategyProfile& u,
                                 const MultiplierProfile& mu, const NetworkGame& game);

/// Largest absolute deviation between partial_gradient and a central finite-difference
/// estimate over player i's block at u.
double check_gradient(int i, const Eigen::VectorXd& u, const NetworkGame& game, double h = 1e-5);

}  // namespace gnekit
