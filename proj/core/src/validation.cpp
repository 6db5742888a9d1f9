#include "gnekit/validation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "gnekit/qp.hpp"

namespace gnekit {

namespace {
constexpr double kPsdTol = 1e-9;
}

bool ValidationReport::ok() const {
  for (const ValidationCheck& c : checks) {
    if (c.fatal && !c.passed) return false;
  }
  return true;
}

bool ValidationReport::all_passed() const {
  for (const ValidationCheck& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

ValidationReport validate(const NetworkGame& game) {
  ValidationReport report;

  {
    ValidationCheck c;
    c.name = "graph_connected";
    c.fatal = false;
    c.passed = game.graph().connected();
    if (!c.passed) c.detail = "network graph is not connected";
    report.checks.push_back(std::move(c));
  }

  {
    ValidationCheck c;
    c.name = "own_block_convex";
    c.passed = true;
    for (int i = 1; i <= game.player_count() && c.passed; ++i) {
      const int off = game.block_offset(i);
      const int d = game.block_size(i);
      Eigen::MatrixXd block = game.cost(i).Q.block(off, off, d, d);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block);
      const double min_eig = eig.eigenvalues().minCoeff();
      if (min_eig < -kPsdTol) {
        c.passed = false;
        std::ostringstream msg;
        msg << "player " << i << " own cost block has eigenvalue " << min_eig;
        c.detail = msg.str();
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    ValidationCheck c;
    c.name = "boxes_bounded";
    c.passed = true;
    for (int i = 1; i <= game.player_count() && c.passed; ++i) {
      const Box& box = game.box(i);
      for (int j = 0; j < box.dim(); ++j) {
        if (!std::isfinite(box.lo(j)) || !std::isfinite(box.hi(j)) || box.lo(j) > box.hi(j)) {
          c.passed = false;
          std::ostringstream msg;
          msg << "player " << i << " box coordinate " << (j + 1) << " is unbounded or empty";
          c.detail = msg.str();
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    // Every shared constraint must be enforced by someone once awareness is pooled
    // over neighborhoods; otherwise parts of the coupled feasible set are invisible.
    ValidationCheck c;
    c.name = "collective_awareness";
    AwarenessLevel pooled;
    for (int i = 1; i <= game.player_count(); ++i) pooled = pooled.unite(game.pooled_awareness(i));
    c.passed = true;
    for (int m = 1; m <= game.constraint_count(); ++m) {
      if (!pooled.contains(m)) {
        c.passed = false;
        std::ostringstream msg;
        msg << "constraint " << m << " is outside every player's awareness";
        c.detail = msg.str();
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    ValidationCheck c;
    c.name = "jointly_feasible";
    const int n = game.joint_dim();
    const int M = game.constraint_count();
    Eigen::MatrixXd A(M, n);
    Eigen::VectorXd b(M);
    for (int m = 1; m <= M; ++m) {
      A.row(m - 1) = game.constraint(m).a.transpose();
      b(m - 1) = game.constraint(m).b;
    }
    append_box_rows(A, b, game.joint_lo(), game.joint_hi());
    FeasibilityProbe probe =
        probe_feasibility(A, b, Eigen::MatrixXd(0, n), Eigen::VectorXd(0));
    c.passed = probe.feasible;
    if (!c.passed) {
      std::ostringstream msg;
      msg << "no jointly feasible point found (violation " << probe.residual << ")";
      c.detail = msg.str();
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

}  // namespace gnekit
