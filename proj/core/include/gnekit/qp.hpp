#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace gnekit {

/// Options for the convex quadratic program solver.
struct QpOptions {
  enum class Method { kAuto, kEnumerate, kProjectedGradient };

  int enumeration_cap = 12;       // max inequality rows handled by active-set enumeration
  double feas_tol = 1e-9;         // primal feasibility tolerance (scaled)
  double act_tol = 1e-7;          // activity detection tolerance
  double dual_tol = 1e-9;         // multiplier sign tolerance
  double kkt_tol = 1e-8;          // stationarity residual tolerance (scaled)
  double pg_tol = 1e-10;          // projected-gradient step-size stop
  long max_pg_iterations = 1000000;
  Method method = Method::kAuto;
  bool polish_multipliers = true; // recover smallest-norm nonnegative multipliers at the solution
  bool min_norm_solution = true;  // among tied minimizers, return the smallest-norm one
};

struct QpResult {
  enum class Status { kSolved, kInfeasible, kNotConverged };

  Status status = Status::kNotConverged;
  Eigen::VectorXd x;
  Eigen::VectorXd multipliers;     // one per inequality row, zero when inactive
  Eigen::VectorXd eq_multipliers;  // one per equality row
  double objective = 0.0;
  double kkt_residual = 0.0;       // max of stationarity, feasibility, sign, complementarity
  std::vector<int> active;         // 0-based indices of active inequality rows
  long iterations = 0;
  bool used_projected_gradient = false;
};

/// Minimize 0.5 x'Px + c'x subject to Ax <= b and Aeq x = beq.
/// P must be symmetric positive semidefinite. Small row counts are solved exactly by
/// active-set enumeration with an optimality certificate per candidate; larger problems
/// fall back to projected gradient with cyclic (Dykstra) projection.
QpResult solve_qp(const Eigen::MatrixXd& P, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const Eigen::MatrixXd& Aeq,
                  const Eigen::VectorXd& beq, const QpOptions& opts = {});

QpResult solve_qp(const Eigen::MatrixXd& P, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const QpOptions& opts = {});

/// Append the rows encoding lo <= x <= hi to (A, b): x_j <= hi_j and -x_j <= -lo_j.
void append_box_rows(Eigen::MatrixXd& A, Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi);

/// All bitmasks over `bits` positions with popcount <= max_size, sparsest first.
std::vector<std::uint32_t> enumeration_masks(int bits, int max_size);

/// Nonnegative multipliers certifying stationarity: gradient + A_rows' lambda + Aeq' nu = 0
/// with lambda >= 0. Every row of A_rows is eligible (callers pass the active rows).
/// smallest_norm searches all supports for the minimum-norm certificate; otherwise the
/// sparsest passing support wins.
struct MultiplierFit {
  bool ok = false;
  Eigen::VectorXd lambda;  // one per row of A_rows, zero when unused
  Eigen::VectorXd nu;      // one per row of Aeq
  double residual = 0.0;
};
MultiplierFit fit_stationarity_multipliers(const Eigen::VectorXd& gradient,
                                           const Eigen::MatrixXd& A_rows,
                                           const Eigen::MatrixXd& Aeq, const QpOptions& opts = {},
                                           bool smallest_norm = true);

/// Least-squares feasibility probe for {Ax <= b, Aeq x = beq}: drives the squared
/// violation to zero by accelerated gradient descent and reports the best point found.
struct FeasibilityProbe {
  bool feasible = false;
  Eigen::VectorXd point;
  double residual = 0.0;  // Euclidean norm of the remaining violation
};
FeasibilityProbe probe_feasibility(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq);

/// Euclidean projection onto {Ax <= b} ∩ {Aeq x = beq} by cyclic Dykstra iterations.
Eigen::VectorXd project_polyhedron(const Eigen::VectorXd& x0, const Eigen::MatrixXd& A,
                                   const Eigen::VectorXd& b, const Eigen::MatrixXd& Aeq,
                                   const Eigen::VectorXd& beq, double tol = 1e-12,
                                   int max_cycles = 20000);

}  // namespace gnekit
