#include "gnekit/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gnekit {

namespace {

void check_joint_dim(const Eigen::VectorXd& u, const NetworkGame& game, const char* who) {
  if (u.size() != game.joint_dim()) {
    throw std::invalid_argument(std::string(who) + ": profile has dimension " +
                                std::to_string(u.size()) + ", game expects " +
                                std::to_string(game.joint_dim()));
  }
}

}  // namespace

double eval_cost(int i, const Eigen::VectorXd& u, const NetworkGame& game) {
  check_joint_dim(u, game, "eval_cost");
  return game.cost(i).eval(u);
}

double eval_constraint(int m, const Eigen::VectorXd& u, const NetworkGame& game) {
  check_joint_dim(u, game, "eval_constraint");
  return game.constraint(m).eval(u);
}

Eigen::VectorXd partial_gradient(int i, const Eigen::VectorXd& u, const NetworkGame& game) {
  check_joint_dim(u, game, "partial_gradient");
  const Eigen::VectorXd full = game.cost(i).gradient(u);
  return full.segment(game.block_offset(i), game.block_size(i));
}

Eigen::VectorXd stacked_gradient(const Eigen::VectorXd& u, const NetworkGame& game) {
  check_joint_dim(u, game, "stacked_gradient");
  Eigen::VectorXd F(game.joint_dim());
  for (int i = 1; i <= game.player_count(); ++i) {
    F.segment(game.block_offset(i), game.block_size(i)) = partial_gradient(i, u, game);
  }
  return F;
}

BestResponseResult best_response(int i, const Eigen::VectorXd& u, const NetworkGame& game,
                                 const KernelOptions& opts) {
  check_joint_dim(u, game, "best_response");
  const int off = game.block_offset(i);
  const int d = game.block_size(i);

  const Eigen::MatrixXd P = game.cost(i).Q.block(off, off, d, d);
  // Linear term of the own-block restriction: grad_i f_i(u) minus the own-block part.
  const Eigen::VectorXd g_i = partial_gradient(i, u, game);
  const Eigen::VectorXd c = g_i - P * u.segment(off, d);

  const std::vector<int>& local = game.local_constraint_indices(i);
  const int n_local = static_cast<int>(local.size());
  Eigen::MatrixXd A(n_local, d);
  Eigen::VectorXd b(n_local);
  for (int k = 0; k < n_local; ++k) {
    const AffineConstraint& con = game.constraint(local[static_cast<size_t>(k)]);
    A.row(k) = con.a.segment(off, d).transpose();
    // Fold the fixed blocks into the right-hand side.
    b(k) = con.b - (con.a.dot(u) - con.a.segment(off, d).dot(u.segment(off, d)));
  }
  append_box_rows(A, b, game.box(i).lo, game.box(i).hi);

  QpResult qp = solve_qp(P, c, A, b, opts.qp);

  BestResponseResult out;
  switch (qp.status) {
    case QpResult::Status::kSolved:
      out.status = BestResponseResult::Status::kSolved;
      break;
    case QpResult::Status::kInfeasible:
      out.status = BestResponseResult::Status::kInfeasible;
      return out;
    case QpResult::Status::kNotConverged:
      out.status = BestResponseResult::Status::kNotConverged;
      break;
  }
  out.minimizer = qp.x;
  out.kkt_residual = qp.kkt_residual;
  out.multipliers = Eigen::VectorXd::Zero(n_local);
  for (int k = 0; k < n_local; ++k) out.multipliers(k) = qp.multipliers(k);
  for (int row : qp.active) {
    if (row < n_local) out.active_set.push_back(local[static_cast<size_t>(row)]);
  }
  Eigen::VectorXd w = u;
  w.segment(off, d) = qp.x;
  out.objective_value = eval_cost(i, w, game);
  return out;
}

double eval_lagrangian_i(int i, const Eigen::VectorXd& v_i, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& mu_i, const NetworkGame& game) {
  check_joint_dim(u, game, "eval_lagrangian_i");
  const int off = game.block_offset(i);
  const int d = game.block_size(i);
  if (v_i.size() != d) {
    throw std::invalid_argument("eval_lagrangian_i: trial block has dimension " +
                                std::to_string(v_i.size()) + ", player expects " +
                                std::to_string(d));
  }
  const std::vector<int>& local = game.local_constraint_indices(i);
  if (mu_i.size() != static_cast<Eigen::Index>(local.size())) {
    throw std::invalid_argument("eval_lagrangian_i: multiplier has dimension " +
                                std::to_string(mu_i.size()) + ", player has " +
                                std::to_string(local.size()) + " local constraints");
  }
  Eigen::VectorXd w = u;
  w.segment(off, d) = v_i;
  double value = eval_cost(i, w, game);
  for (size_t k = 0; k < local.size(); ++k) {
    value += mu_i(static_cast<Eigen::Index>(k)) * eval_constraint(local[k], w, game);
  }
  return value;
}

double eval_augmented_lagrangian(const StrategyProfile& v, const StrategyProfile& u,
                                 const MultiplierProfile& mu, const NetworkGame& game) {
  double total = 0.0;
  for (int i = 1; i <= game.player_count(); ++i) {
    total += eval_lagrangian_i(i, v.block(i), u.flat(), mu.of(i), game);
  }
  return total;
}

double check_gradient(int i, const Eigen::VectorXd& u, const NetworkGame& game, double h) {
  check_joint_dim(u, game, "check_gradient");
  const int off = game.block_offset(i);
  const int d = game.block_size(i);
  const Eigen::VectorXd analytic = partial_gradient(i, u, game);
  double worst = 0.0;
  Eigen::VectorXd w = u;
  for (int j = 0; j < d; ++j) {
    const double saved = w(off + j);
    w(off + j) = saved + h;
    const double fp = eval_cost(i, w, game);
    w(off + j) = saved - h;
    const double fm = eval_cost(i, w, game);
    w(off + j) = saved;
    worst = std::max(worst, std::abs((fp - fm) / (2.0 * h) - analytic(j)));
  }
  return worst;
}

}  // namespace gnekit
