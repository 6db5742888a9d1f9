#include "gnekit/qp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gnekit {
namespace {

double inf_norm_or_zero(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

std::vector<int> active_rows(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& x, double act_tol) {
  std::vector<int> act;
  for (int m = 0; m < A.rows(); ++m) {
    const double scale = std::max(1.0, std::abs(b(m)));
    if (std::abs(A.row(m).dot(x) - b(m)) <= act_tol * scale) act.push_back(m);
  }
  return act;
}

bool primal_feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq,
                     const Eigen::VectorXd& x, double feas_tol) {
  for (int m = 0; m < A.rows(); ++m) {
    const double scale = std::max(1.0, std::abs(b(m)));
    if (A.row(m).dot(x) - b(m) > feas_tol * scale) return false;
  }
  for (int m = 0; m < Aeq.rows(); ++m) {
    const double scale = std::max(1.0, std::abs(beq(m)));
    if (std::abs(Aeq.row(m).dot(x) - beq(m)) > feas_tol * scale) return false;
  }
  return true;
}

struct Certificate {
  bool ok = false;
  Eigen::VectorXd lambda;  // full length over inequality rows
  Eigen::VectorXd nu;      // equality rows
  double norm = std::numeric_limits<double>::infinity();
};

// Wrapper around fit_stationarity_multipliers for a QP at point x: gathers the active
// rows, fits, and scatters the multipliers back to full row length.
Certificate fit_multipliers(const Eigen::MatrixXd& P, const Eigen::VectorXd& c,
                            const Eigen::MatrixXd& A, const Eigen::MatrixXd& Aeq,
                            const Eigen::VectorXd& x, const std::vector<int>& act,
                            const QpOptions& opts, bool early_exit) {
  const Eigen::VectorXd g = P * x + c;
  Eigen::MatrixXd A_act(static_cast<int>(act.size()), A.cols());
  for (size_t j = 0; j < act.size(); ++j) A_act.row(static_cast<int>(j)) = A.row(act[j]);
  MultiplierFit fit = fit_stationarity_multipliers(g, A_act, Aeq, opts, !early_exit);
  Certificate cert;
  cert.ok = fit.ok;
  if (fit.ok) {
    cert.lambda = Eigen::VectorXd::Zero(A.rows());
    for (size_t j = 0; j < act.size(); ++j) cert.lambda(act[j]) = fit.lambda(static_cast<int>(j));
    cert.nu = fit.nu;
    cert.norm = fit.lambda.norm();
  }
  return cert;
}

double kkt_residual_at(const Eigen::MatrixXd& P, const Eigen::VectorXd& c,
                       const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                       const Eigen::VectorXd& nu) {
  Eigen::VectorXd stat = P * x + c;
  if (A.rows() > 0) stat += A.transpose() * lambda;
  if (Aeq.rows() > 0) stat += Aeq.transpose() * nu;
  double r = inf_norm_or_zero(stat);
  for (int m = 0; m < A.rows(); ++m) {
    const double slack = A.row(m).dot(x) - b(m);
    r = std::max(r, slack);                       // primal violation
    r = std::max(r, -lambda(m));                  // sign violation
    r = std::max(r, std::abs(lambda(m) * slack)); // complementarity
  }
  for (int m = 0; m < Aeq.rows(); ++m) {
    r = std::max(r, std::abs(Aeq.row(m).dot(x) - beq(m)));
  }
  return std::max(r, 0.0);
}

struct Candidate {
  Eigen::VectorXd x;
  Certificate cert;
  long subsets_tried = 0;
};

// Enumerate forced-active subsets; return the first candidate that is primal feasible
// and carries a nonnegative stationarity certificate. Complete for bounded feasible
// sets: some vertex of the optimal face pins x through n independent active rows.
std::optional<Candidate> enumerate_solve(const Eigen::MatrixXd& P, const Eigen::VectorXd& c,
                                         const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                         const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq,
                                         const QpOptions& opts) {
  const int n = static_cast<int>(P.rows());
  const int r = static_cast<int>(A.rows());
  const int e = static_cast<int>(Aeq.rows());
  const std::vector<std::uint32_t> masks = enumeration_masks(r, std::min(n, r));
  long tried = 0;

  for (std::uint32_t mask : masks) {
    ++tried;
    const int k = std::popcount(mask);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + k + e, n + k + e);
    Eigen::VectorXd rhs(n + k + e);
    M.topLeftCorner(n, n) = P;
    rhs.head(n) = -c;
    int row = n;
    for (int j = 0; j < r; ++j) {
      if (!(mask & (1u << j))) continue;
      M.block(row, 0, 1, n) = A.row(j);
      M.block(0, row, n, 1) = A.row(j).transpose();
      rhs(row) = b(j);
      ++row;
    }
    for (int m = 0; m < e; ++m) {
      M.block(row, 0, 1, n) = Aeq.row(m);
      M.block(0, row, n, 1) = Aeq.row(m).transpose();
      rhs(row) = beq(m);
      ++row;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
    const Eigen::VectorXd z = cod.solve(rhs);
    const double scale = std::max(1.0, inf_norm_or_zero(rhs));
    if (inf_norm_or_zero(M * z - rhs) > opts.kkt_tol * scale) continue;  // inconsistent subset

    const Eigen::VectorXd x = z.head(n);
    if (!primal_feasible(A, b, Aeq, beq, x, opts.feas_tol)) continue;

    // Fast screen: the subset's own multipliers, when already nonnegative.
    const double gscale = std::max(1.0, inf_norm_or_zero(Eigen::VectorXd(P * x + c)));
    bool screen_ok = true;
    for (int j = 0; j < k; ++j) {
      if (z(n + j) < -opts.dual_tol * gscale) {
        screen_ok = false;
        break;
      }
    }
    Certificate cert;
    if (screen_ok) {
      cert.ok = true;
      cert.lambda = Eigen::VectorXd::Zero(r);
      int pos = 0;
      for (int j = 0; j < r; ++j) {
        if (mask & (1u << j)) cert.lambda(j) = std::max(0.0, z(n + pos++));
      }
      cert.nu = z.segment(n + k, e);
    } else {
      cert = fit_multipliers(P, c, A, Aeq, x, active_rows(A, b, x, opts.act_tol), opts,
                             /*early_exit=*/true);
      if (!cert.ok) continue;
    }
    return Candidate{x, std::move(cert), tried};
  }
  return std::nullopt;
}

struct ProbeResult {
  bool feasible = false;
  Eigen::VectorXd x;
  double residual = std::numeric_limits<double>::infinity();
};

// Accelerated gradient descent on 0.5 ||(Ax - b)+||^2 + 0.5 ||Aeq x - beq||^2.
ProbeResult feasibility_probe(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq, int n) {
  ProbeResult out;
  const double L = A.squaredNorm() + Aeq.squaredNorm() + 1e-12;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = x;
  double t = 1.0;
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd xbest = x;
  for (long it = 0; it < 300000; ++it) {
    Eigen::VectorXd ri = (A * y - b).cwiseMax(0.0);
    Eigen::VectorXd re = Aeq * y - beq;
    const double phi = 0.5 * (ri.squaredNorm() + re.squaredNorm());
    if (phi < best) {
      best = phi;
      xbest = y;
    }
    if (best <= 0.5e-20) break;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    if (A.rows() > 0) grad += A.transpose() * ri;
    if (Aeq.rows() > 0) grad += Aeq.transpose() * re;
    if (inf_norm_or_zero(grad) <= 1e-14) break;
    Eigen::VectorXd xn = y - grad / L;
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = xn + ((t - 1.0) / tn) * (xn - x);
    x = xn;
    t = tn;
  }
  out.residual = std::sqrt(2.0 * best);
  out.feasible = out.residual <= 1e-8;
  out.x = xbest;
  return out;
}

// True when every inequality row is a signed coordinate row (pure box rows).
bool rows_are_axis_aligned(const Eigen::MatrixXd& A) {
  for (int m = 0; m < A.rows(); ++m) {
    int nonzero = 0;
    for (int j = 0; j < A.cols(); ++j) {
      if (A(m, j) != 0.0) ++nonzero;
    }
    if (nonzero > 1) return false;
  }
  return true;
}

Eigen::VectorXd project_axis_aligned(const Eigen::VectorXd& x0, const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(x0.size(), -std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(x0.size(), std::numeric_limits<double>::infinity());
  for (int m = 0; m < A.rows(); ++m) {
    for (int j = 0; j < A.cols(); ++j) {
      const double a = A(m, j);
      if (a > 0.0) hi(j) = std::min(hi(j), b(m) / a);
      if (a < 0.0) lo(j) = std::max(lo(j), b(m) / a);
    }
  }
  return x0.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

std::vector<std::uint32_t> enumeration_masks(int bits, int max_size) {
  std::vector<std::uint32_t> masks;
  const std::uint32_t limit = bits >= 31 ? 0x7fffffffu : ((1u << bits) - 1u);
  for (std::uint32_t m = 0;; ++m) {
    if (std::popcount(m) <= max_size) masks.push_back(m);
    if (m == limit) break;
  }
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return masks;
}

// Supports of size <= n suffice for existence, so the early-exit search caps the
// support size there; the exhaustive search keeps the smallest-norm certificate.
MultiplierFit fit_stationarity_multipliers(const Eigen::VectorXd& gradient,
                                           const Eigen::MatrixXd& A_rows,
                                           const Eigen::MatrixXd& Aeq, const QpOptions& opts,
                                           bool smallest_norm) {
  const int n = static_cast<int>(gradient.size());
  const int e = static_cast<int>(Aeq.rows());
  const int k_act = static_cast<int>(A_rows.rows());
  const double gscale = std::max(1.0, inf_norm_or_zero(gradient));

  MultiplierFit best;
  double best_norm = std::numeric_limits<double>::infinity();
  bool single_support_only = false;
  if (k_act > 16) single_support_only = true;  // enumeration would explode; try all-active only

  const int max_size = smallest_norm ? k_act : std::min(n, k_act);
  std::vector<std::uint32_t> masks =
      single_support_only ? std::vector<std::uint32_t>{(1u << k_act) - 1u}
                          : enumeration_masks(k_act, max_size);

  for (std::uint32_t mask : masks) {
    const int k = std::popcount(mask);
    Eigen::VectorXd w;
    double residual;
    if (k + e == 0) {
      residual = inf_norm_or_zero(gradient);
      w.resize(0);
    } else {
      Eigen::MatrixXd M(n, k + e);
      int col = 0;
      for (int j = 0; j < k_act; ++j) {
        if (mask & (1u << j)) M.col(col++) = A_rows.row(j).transpose();
      }
      for (int m = 0; m < e; ++m) M.col(col++) = Aeq.row(m).transpose();
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
      w = cod.solve(-gradient);
      residual = inf_norm_or_zero(M * w + gradient);
    }
    if (residual > opts.kkt_tol * gscale) continue;
    bool signs_ok = true;
    for (int j = 0; j < k; ++j) {
      if (w(j) < -opts.dual_tol * gscale) {
        signs_ok = false;
        break;
      }
    }
    if (!signs_ok) continue;

    const double norm = w.size() == 0 ? 0.0 : w.norm();
    if (norm < best_norm) {
      best.ok = true;
      best_norm = norm;
      best.residual = residual;
      best.lambda = Eigen::VectorXd::Zero(k_act);
      int pos = 0;
      for (int j = 0; j < k_act; ++j) {
        if (mask & (1u << j)) best.lambda(j) = std::max(0.0, w(pos++));
      }
      best.nu = w.tail(e);
    }
    if (!smallest_norm && best.ok) break;
  }
  return best;
}

FeasibilityProbe probe_feasibility(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   const Eigen::MatrixXd& Aeq, const Eigen::VectorXd& beq) {
  const int n = static_cast<int>(std::max(A.cols(), Aeq.cols()));
  ProbeResult inner = feasibility_probe(A, b, Aeq, beq, n);
  FeasibilityProbe out;
  out.feasible = inner.feasible;
  out.point = inner.x;
  out.residual = inner.residual;
  return out;
}

void append_box_rows(Eigen::MatrixXd& A, Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  if (A.cols() == 0 && A.rows() == 0) A.resize(0, n);
  const int r0 = static_cast<int>(A.rows());
  A.conservativeResize(r0 + 2 * n, Eigen::NoChange);
  b.conservativeResize(r0 + 2 * n);
  A.bottomRows(2 * n).setZero();
  for (int j = 0; j < n; ++j) {
    A(r0 + 2 * j, j) = 1.0;
    b(r0 + 2 * j) = hi(j);
    A(r0 + 2 * j + 1, j) = -1.0;
    b(r0 + 2 * j + 1) = -lo(j);
  }
}

Eigen::VectorXd project_polyhedron(const Eigen::VectorXd& x0, const Eigen::MatrixXd& A,
                                   const Eigen::VectorXd& b, const Eigen::MatrixXd& Aeq,
                                   const Eigen::VectorXd& beq, double tol, int max_cycles) {
  const int r = static_cast<int>(A.rows());
  const int e = static_cast<int>(Aeq.rows());
  if (r + e == 0) return x0;
  if (e == 0 && rows_are_axis_aligned(A)) return project_axis_aligned(x0, A, b);

  Eigen::VectorXd x = x0;
  std::vector<Eigen::VectorXd> corr(static_cast<size_t>(r + e),
                                    Eigen::VectorXd::Zero(x0.size()));
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    double change = 0.0;
    for (int s = 0; s < r + e; ++s) {
      Eigen::VectorXd z = x + corr[static_cast<size_t>(s)];
      Eigen::VectorXd projected = z;
      if (s < r) {
        const double na2 = A.row(s).squaredNorm();
        if (na2 > 0.0) {
          const double viol = A.row(s).dot(z) - b(s);
          if (viol > 0.0) projected = z - (viol / na2) * A.row(s).transpose();
        }
      } else {
        const int m = s - r;
        const double na2 = Aeq.row(m).squaredNorm();
        if (na2 > 0.0) {
          projected = z - ((Aeq.row(m).dot(z) - beq(m)) / na2) * Aeq.row(m).transpose();
        }
      }
      corr[static_cast<size_t>(s)] = z - projected;
      change = std::max(change, inf_norm_or_zero(Eigen::VectorXd(projected - x)));
      x = projected;
    }
    if (change <= tol * (1.0 + inf_norm_or_zero(x))) break;
  }
  return x;
}

QpResult solve_qp(const Eigen::MatrixXd& P, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const QpOptions& opts) {
  return solve_qp(P, c, A, b, Eigen::MatrixXd(0, P.rows()), Eigen::VectorXd(0), opts);
}

QpResult solve_qp(const Eigen::MatrixXd& P, const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, const Eigen::MatrixXd& Aeq,
                  const Eigen::VectorXd& beq, const QpOptions& opts) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n || c.size() != n) throw std::invalid_argument("bad objective dimensions");
  if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != n)) {
    throw std::invalid_argument("bad inequality dimensions");
  }
  if (Aeq.rows() != beq.size() || (Aeq.rows() > 0 && Aeq.cols() != n)) {
    throw std::invalid_argument("bad equality dimensions");
  }

  QpResult res;
  const int r = static_cast<int>(A.rows());
  const bool want_enum = opts.method != QpOptions::Method::kProjectedGradient &&
                         (r <= opts.enumeration_cap ||
                          (opts.method == QpOptions::Method::kEnumerate && r <= 20));

  Eigen::VectorXd x_final;
  Certificate cert_final;
  long iterations = 0;

  if (want_enum) {
    auto found = enumerate_solve(P, c, A, b, Aeq, beq, opts);
    if (found) {
      iterations += found->subsets_tried;
      x_final = found->x;
      cert_final = found->cert;
      if (opts.min_norm_solution) {
        // Phase 2: smallest-norm point of the optimal face. The optimal set of a convex
        // QP is exactly {x feasible : P x = P x*, c' x = c' x*}.
        Eigen::MatrixXd Aeq2(Aeq.rows() + n + 1, n);
        Eigen::VectorXd beq2(Aeq.rows() + n + 1);
        Aeq2.topRows(Aeq.rows()) = Aeq;
        beq2.head(Aeq.rows()) = beq;
        Aeq2.middleRows(Aeq.rows(), n) = P;
        beq2.segment(Aeq.rows(), n) = P * x_final;
        Aeq2.bottomRows(1) = c.transpose();
        beq2(Aeq.rows() + n) = c.dot(x_final);
        QpOptions opts2 = opts;
        opts2.min_norm_solution = false;
        auto mn = enumerate_solve(Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n), A, b,
                                  Aeq2, beq2, opts2);
        if (mn) {
          iterations += mn->subsets_tried;
          Certificate polished = fit_multipliers(P, c, A, Aeq, mn->x,
                                                 active_rows(A, b, mn->x, opts.act_tol), opts,
                                                 /*early_exit=*/!opts.polish_multipliers);
          if (polished.ok) {
            x_final = mn->x;
            cert_final = polished;
          }
        }
      }
      if (opts.polish_multipliers) {
        Certificate polished = fit_multipliers(P, c, A, Aeq, x_final,
                                               active_rows(A, b, x_final, opts.act_tol), opts,
                                               /*early_exit=*/false);
        if (polished.ok) cert_final = polished;
      }
      res.status = QpResult::Status::kSolved;
      res.x = x_final;
      res.multipliers = cert_final.lambda.size() == r ? cert_final.lambda
                                                      : Eigen::VectorXd::Zero(r);
      res.eq_multipliers = cert_final.nu.size() == Aeq.rows() ? cert_final.nu
                                                              : Eigen::VectorXd::Zero(Aeq.rows());
      res.objective = 0.5 * x_final.dot(P * x_final) + c.dot(x_final);
      res.kkt_residual = kkt_residual_at(P, c, A, b, Aeq, beq, x_final, res.multipliers,
                                         res.eq_multipliers);
      res.active = active_rows(A, b, x_final, opts.act_tol);
      res.iterations = iterations;
      return res;
    }
    ProbeResult probe = feasibility_probe(A, b, Aeq, beq, n);
    if (!probe.feasible) {
      res.status = QpResult::Status::kInfeasible;
      res.x = probe.x;
      res.multipliers = Eigen::VectorXd::Zero(r);
      res.eq_multipliers = Eigen::VectorXd::Zero(Aeq.rows());
      res.kkt_residual = probe.residual;
      res.iterations = iterations;
      return res;
    }
    // Feasible but nothing certified (flat directions without attained optimum, or
    // numerical degeneracy): continue with projected gradient from the probe point.
  }

  // Projected-gradient fallback.
  ProbeResult probe = feasibility_probe(A, b, Aeq, beq, n);
  if (!probe.feasible) {
    res.status = QpResult::Status::kInfeasible;
    res.x = probe.x;
    res.multipliers = Eigen::VectorXd::Zero(r);
    res.eq_multipliers = Eigen::VectorXd::Zero(Aeq.rows());
    res.kkt_residual = probe.residual;
    return res;
  }
  double L = 1.0;
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
    if (es.info() == Eigen::Success) L = std::max(es.eigenvalues().maxCoeff(), 1e-12);
  }
  Eigen::VectorXd x = project_polyhedron(probe.x, A, b, Aeq, beq);
  bool converged = false;
  long it = 0;
  for (; it < opts.max_pg_iterations; ++it) {
    Eigen::VectorXd xn = project_polyhedron(x - (P * x + c) / L, A, b, Aeq, beq, 1e-12, 200);
    const double step = inf_norm_or_zero(Eigen::VectorXd(xn - x));
    x = xn;
    if (step <= opts.pg_tol * std::max(1.0, inf_norm_or_zero(x))) {
      converged = true;
      break;
    }
  }
  x = project_polyhedron(x, A, b, Aeq, beq);
  Certificate cert = fit_multipliers(P, c, A, Aeq, x, active_rows(A, b, x, 1e-6), opts,
                                     /*early_exit=*/!opts.polish_multipliers);
  res.status = converged ? QpResult::Status::kSolved : QpResult::Status::kNotConverged;
  res.x = x;
  res.multipliers = cert.ok ? cert.lambda : Eigen::VectorXd::Zero(r);
  res.eq_multipliers =
      cert.ok && cert.nu.size() == Aeq.rows() ? cert.nu : Eigen::VectorXd::Zero(Aeq.rows());
  res.objective = 0.5 * x.dot(P * x) + c.dot(x);
  res.kkt_residual =
      kkt_residual_at(P, c, A, b, Aeq, beq, x, res.multipliers, res.eq_multipliers);
  res.active = active_rows(A, b, x, opts.act_tol);
  res.iterations = it;
  res.used_projected_gradient = true;
  return res;
}

}  // namespace gnekit
