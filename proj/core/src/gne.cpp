#include "gnekit/gne.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gnekit/qp.hpp"

namespace gnekit {

namespace {

double scaled(double tol, double ref) { return tol * std::max(1.0, std::abs(ref)); }

}  // namespace

GneCertificate is_gne(const Eigen::VectorXd& u, const NetworkGame& game, double tol) {
  const int N = game.player_count();
  GneCertificate cert;
  cert.tol = tol;
  cert.improvement_gaps = Eigen::VectorXd::Zero(N);
  cert.kkt_residuals = Eigen::VectorXd::Zero(N);

  if (u.size() != game.joint_dim()) {
    cert.detail = "profile dimension does not match the game";
    return cert;
  }

  cert.feasible = true;
  for (int i = 1; i <= N && cert.feasible; ++i) {
    const Eigen::VectorXd ui = u.segment(game.block_offset(i), game.block_size(i));
    if (!game.box(i).contains(ui, tol)) {
      cert.feasible = false;
      std::ostringstream msg;
      msg << "player " << i << " is outside its box";
      cert.detail = msg.str();
      break;
    }
    for (int m : game.local_constraint_indices(i)) {
      if (game.constraint(m).eval(u) > tol) {
        cert.feasible = false;
        std::ostringstream msg;
        msg << "player " << i << " violates constraint " << m << " by "
            << game.constraint(m).eval(u);
        cert.detail = msg.str();
        break;
      }
    }
  }
  if (!cert.feasible) return cert;

  KernelOptions kopts;
  bool all_solved = true;
  bool no_improvement = true;
  for (int i = 1; i <= N; ++i) {
    BestResponseResult br = best_response(i, u, game, kopts);
    if (br.status == BestResponseResult::Status::kInfeasible) {
      // u sits within tol of an exactly empty slice; no feasible deviation exists.
      continue;
    }
    if (br.status != BestResponseResult::Status::kSolved) {
      all_solved = false;
      cert.improvement_gaps(i - 1) = std::numeric_limits<double>::infinity();
      std::ostringstream msg;
      msg << "player " << i << " best response did not converge";
      cert.detail = msg.str();
      continue;
    }
    cert.kkt_residuals(i - 1) = br.kkt_residual;
    const double fu = eval_cost(i, u, game);
    const double gap = fu - br.objective_value;
    cert.improvement_gaps(i - 1) = gap;
    if (gap > scaled(tol, fu)) {
      no_improvement = false;
      if (cert.detail.empty()) {
        std::ostringstream msg;
        msg << "player " << i << " can improve its cost by " << gap;
        cert.detail = msg.str();
      }
    }
  }
  cert.worst_gap = cert.improvement_gaps.maxCoeff();
  cert.is_equilibrium = all_solved && no_improvement;
  return cert;
}

EquilibriumReport solve_gne_fixed_point(const NetworkGame& game, const Eigen::VectorXd& start,
                                        const SolveOptions& opts) {
  if (start.size() != game.joint_dim()) {
    throw std::invalid_argument("solve_gne_fixed_point: start dimension does not match the game");
  }
  if (!(opts.damping > 0.0) || opts.damping > 1.0) {
    throw std::invalid_argument("solve_gne_fixed_point: damping must lie in (0, 1]");
  }
  const int N = game.player_count();

  EquilibriumReport rep;
  rep.kind = EquilibriumReport::Kind::kGeneralized;

  Eigen::VectorXd u = start;
  for (int i = 1; i <= N; ++i) {
    u.segment(game.block_offset(i), game.block_size(i)) =
        game.box(i).clamp(u.segment(game.block_offset(i), game.block_size(i)));
  }

  std::vector<bool> warned_infeasible(static_cast<size_t>(N) + 1, false);
  std::vector<bool> warned_stuck(static_cast<size_t>(N) + 1, false);
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    Eigen::VectorXd next = u;
    for (int i = 1; i <= N; ++i) {
      const int off = game.block_offset(i);
      const int d = game.block_size(i);
      const Eigen::VectorXd& base = (opts.sweep == SolveOptions::Sweep::kGaussSeidel) ? next : u;
      BestResponseResult br = best_response(i, base, game, opts.kernel);
      if (br.status == BestResponseResult::Status::kInfeasible) {
        if (!warned_infeasible[static_cast<size_t>(i)]) {
          std::ostringstream msg;
          msg << "player " << i << " has an empty feasible slice at iteration " << it
              << "; holding its block";
          rep.warnings.push_back(msg.str());
          warned_infeasible[static_cast<size_t>(i)] = true;
        }
        continue;
      }
      if (br.status != BestResponseResult::Status::kSolved) {
        if (!warned_stuck[static_cast<size_t>(i)]) {
          std::ostringstream msg;
          msg << "player " << i << " best response did not converge at iteration " << it
              << "; holding its block";
          rep.warnings.push_back(msg.str());
          warned_stuck[static_cast<size_t>(i)] = true;
        }
        continue;
      }
      next.segment(off, d) =
          (1.0 - opts.damping) * base.segment(off, d) + opts.damping * br.minimizer;
    }
    residual = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    if (residual <= scaled(opts.fp_tol, u.lpNorm<Eigen::Infinity>())) {
      ++it;
      break;
    }
  }
  rep.iterations = it;
  rep.fixed_point_residual = residual;
  rep.converged = residual <= scaled(opts.fp_tol, u.lpNorm<Eigen::Infinity>());
  if (!rep.converged) {
    rep.warnings.push_back("fixed-point iteration did not reach the requested tolerance");
  }
  rep.profile = StrategyProfile::from_flat(game, u);

  rep.multipliers = MultiplierProfile::zeros(game);
  std::set<int> active;
  for (int i = 1; i <= N; ++i) {
    BestResponseResult br = best_response(i, u, game, opts.kernel);
    if (br.status != BestResponseResult::Status::kSolved) continue;
    rep.multipliers.of(i) = br.multipliers;
    rep.worst_kkt_residual = std::max(rep.worst_kkt_residual, br.kkt_residual);
    const std::vector<int>& local = game.local_constraint_indices(i);
    for (size_t k = 0; k < local.size(); ++k) {
      const double slack = game.constraint(local[k]).eval(u);
      rep.complementarity_residual = std::max(
          rep.complementarity_residual, std::abs(br.multipliers(static_cast<Eigen::Index>(k)) * slack));
    }
    for (int m : br.active_set) active.insert(m);
  }
  rep.active_constraints.assign(active.begin(), active.end());
  rep.certificate = is_gne(u, game, opts.certificate_tol);
  return rep;
}

bool EquilibriumSet::contains_node(const Eigen::VectorXi& node) const {
  for (int r = 0; r < nodes.rows(); ++r) {
    if ((nodes.row(r).transpose().array() == node.array()).all()) return true;
  }
  return false;
}

EquilibriumSet enumerate_gne_grid(const NetworkGame& game, const GridSpec& spec,
                                  long long grid_cap) {
  const int n = game.joint_dim();
  const int N = game.player_count();
  const int M = game.constraint_count();
  if (spec.lo.size() != n || spec.hi.size() != n) {
    throw std::invalid_argument("enumerate_gne_grid: window dimension does not match the game");
  }
  if (!(spec.step > 0.0)) {
    throw std::invalid_argument("enumerate_gne_grid: step must be positive");
  }

  EquilibriumSet out;
  out.spec = spec;

  const Eigen::VectorXd jlo = game.joint_lo();
  const Eigen::VectorXd jhi = game.joint_hi();
  std::vector<long long> kmin(static_cast<size_t>(n)), kmax(static_cast<size_t>(n));
  long long total = 1;
  for (int j = 0; j < n; ++j) {
    const double lo = std::max(spec.lo(j), jlo(j));
    const double hi = std::min(spec.hi(j), jhi(j));
    const long long a = static_cast<long long>(std::ceil((lo - spec.lo(j)) / spec.step - 1e-9));
    const long long b = static_cast<long long>(std::floor((hi - spec.lo(j)) / spec.step + 1e-9));
    if (b < a) {
      out.nodes.resize(0, n);
      return out;  // window does not meet the box
    }
    kmin[static_cast<size_t>(j)] = a;
    kmax[static_cast<size_t>(j)] = b;
    const long long count = b - a + 1;
    if (count > grid_cap || total > grid_cap / count) {
      std::ostringstream msg;
      msg << "enumerate_gne_grid: grid would test more than " << grid_cap << " points";
      throw GridCapExceeded(msg.str());
    }
    total *= count;
  }

  // Discretization tolerance: the cost varies at most ~0.5*kappa*step over half a cell
  // per coordinate, so a true equilibrium's nearest lattice point shows a best-response
  // gap no larger than 0.5 * n * kappa * step^2.
  double kappa = 0.0;
  for (int i = 1; i <= N; ++i) {
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    kappa = std::max(kappa,
                     game.cost(i).Q.block(off, off, d, d).cwiseAbs().rowwise().sum().maxCoeff());
  }
  const double tol_gap = 0.5 * n * kappa * spec.step * spec.step;
  out.tol_used = tol_gap;

  std::vector<double> con_slack(static_cast<size_t>(M), 0.0);
  for (int m = 1; m <= M; ++m) {
    con_slack[static_cast<size_t>(m - 1)] =
        0.5 * spec.step * game.constraint(m).a.lpNorm<1>() + 1e-12;
    out.max_slack_used = std::max(out.max_slack_used, con_slack[static_cast<size_t>(m - 1)]);
  }

  bool all_scalar = true;
  for (int i = 1; i <= N; ++i) {
    if (game.block_size(i) != 1) all_scalar = false;
  }
  std::vector<double> own_diag(static_cast<size_t>(N), 0.0);
  if (all_scalar) {
    for (int i = 1; i <= N; ++i) {
      own_diag[static_cast<size_t>(i - 1)] =
          game.cost(i).Q(game.block_offset(i), game.block_offset(i));
    }
  }

  auto passes = [&](const Eigen::VectorXd& u) -> bool {
    for (int m = 1; m <= M; ++m) {
      if (game.constraint(m).eval(u) > con_slack[static_cast<size_t>(m - 1)]) return false;
    }
    if (all_scalar) {
      for (int i = 1; i <= N; ++i) {
        const int j = game.block_offset(i);
        const double Qjj = own_diag[static_cast<size_t>(i - 1)];
        const double gj = game.cost(i).Q.row(j).dot(u) + game.cost(i).q(j);
        const double r = gj - Qjj * u(j);
        double tlo = game.box(i).lo(0);
        double thi = game.box(i).hi(0);
        bool slice_empty = false;
        for (int m : game.local_constraint_indices(i)) {
          const AffineConstraint& con = game.constraint(m);
          const double coef = con.a(j);
          const double rhs = con.b - (con.a.dot(u) - coef * u(j));
          if (coef > 0.0) {
            thi = std::min(thi, rhs / coef);
          } else if (coef < 0.0) {
            tlo = std::max(tlo, rhs / coef);
          } else if (rhs < 0.0) {
            slice_empty = true;
            break;
          }
        }
        if (slice_empty || tlo > thi) continue;  // no feasible deviation for this player
        double tstar;
        if (Qjj > 1e-15) {
          tstar = std::clamp(-r / Qjj, tlo, thi);
        } else if (r > 0.0) {
          tstar = tlo;
        } else if (r < 0.0) {
          tstar = thi;
        } else {
          tstar = std::clamp(u(j), tlo, thi);
        }
        const double phi_u = 0.5 * Qjj * u(j) * u(j) + r * u(j);
        const double phi_star = 0.5 * Qjj * tstar * tstar + r * tstar;
        if (phi_u - phi_star > tol_gap) return false;
      }
      return true;
    }
    for (int i = 1; i <= N; ++i) {
      BestResponseResult br = best_response(i, u, game);
      if (br.status == BestResponseResult::Status::kInfeasible) continue;
      if (br.status != BestResponseResult::Status::kSolved) return false;
      if (eval_cost(i, u, game) - br.objective_value > tol_gap) return false;
    }
    return true;
  };

  std::vector<long long> k = kmin;
  Eigen::VectorXd u(n);
  for (int j = 0; j < n; ++j) u(j) = spec.lo(j) + static_cast<double>(k[static_cast<size_t>(j)]) * spec.step;
  std::vector<Eigen::VectorXi> node_rows;
  while (true) {
    ++out.tested;
    if (passes(u)) {
      out.points.push_back(u);
      Eigen::VectorXi node(n);
      for (int j = 0; j < n; ++j) node(j) = static_cast<int>(k[static_cast<size_t>(j)]);
      node_rows.push_back(std::move(node));
    }
    int j = 0;
    while (j < n) {
      if (++k[static_cast<size_t>(j)] > kmax[static_cast<size_t>(j)]) {
        k[static_cast<size_t>(j)] = kmin[static_cast<size_t>(j)];
        u(j) = spec.lo(j) + static_cast<double>(k[static_cast<size_t>(j)]) * spec.step;
        ++j;
      } else {
        u(j) = spec.lo(j) + static_cast<double>(k[static_cast<size_t>(j)]) * spec.step;
        break;
      }
    }
    if (j == n) break;
  }

  out.nodes.resize(static_cast<Eigen::Index>(node_rows.size()), n);
  for (size_t rrow = 0; rrow < node_rows.size(); ++rrow) {
    out.nodes.row(static_cast<Eigen::Index>(rrow)) = node_rows[rrow].transpose();
  }
  return out;
}

EquilibriumReport solve_ve(const NetworkGame& game, const SolveOptions& opts) {
  const int n = game.joint_dim();
  const int M = game.constraint_count();

  EquilibriumReport rep;
  rep.kind = EquilibriumReport::Kind::kVariational;

  Eigen::MatrixXd J(n, n);
  Eigen::VectorXd r(n);
  for (int i = 1; i <= game.player_count(); ++i) {
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    J.middleRows(off, d) = game.cost(i).Q.middleRows(off, d);
    r.segment(off, d) = game.cost(i).q.segment(off, d);
  }

  Eigen::MatrixXd A(M, n);
  Eigen::VectorXd b(M);
  for (int m = 1; m <= M; ++m) {
    A.row(m - 1) = game.constraint(m).a.transpose();
    b(m - 1) = game.constraint(m).b;
  }
  append_box_rows(A, b, game.joint_lo(), game.joint_hi());
  const int rows = static_cast<int>(A.rows());
  if (rows > 24) {
    throw std::invalid_argument("solve_ve: too many constraint rows for joint enumeration");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (J + J.transpose()));
  if (eig.eigenvalues().minCoeff() < -1e-9) {
    rep.warnings.push_back(
        "stacked gradient map is not monotone; certified points remain valid but the "
        "solution set may contain several points");
  }

  const QpOptions& qopts = opts.kernel.qp;
  bool found = false;
  Eigen::VectorXd best_x;
  Eigen::VectorXd best_lambda;
  double best_norm = std::numeric_limits<double>::infinity();
  int tried = 0;

  for (std::uint32_t mask : enumeration_masks(rows, std::min(n, rows))) {
    ++tried;
    std::vector<int> sel;
    for (int m = 0; m < rows; ++m) {
      if (mask & (1u << m)) sel.push_back(m);
    }
    const int kk = static_cast<int>(sel.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + kk, n + kk);
    K.topLeftCorner(n, n) = J;
    for (int t = 0; t < kk; ++t) {
      K.block(n + t, 0, 1, n) = A.row(sel[static_cast<size_t>(t)]);
      K.block(0, n + t, n, 1) = A.row(sel[static_cast<size_t>(t)]).transpose();
    }
    Eigen::VectorXd rhs(n + kk);
    rhs.head(n) = -r;
    for (int t = 0; t < kk; ++t) rhs(n + t) = b(sel[static_cast<size_t>(t)]);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(K);
    Eigen::VectorXd sol = cod.solve(rhs);
    const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    if ((K * sol - rhs).lpNorm<Eigen::Infinity>() > qopts.kkt_tol * scale) continue;
    const Eigen::VectorXd x = sol.head(n);

    bool feasible = true;
    for (int m = 0; m < rows && feasible; ++m) {
      if (A.row(m).dot(x) - b(m) > scaled(qopts.feas_tol, b(m))) feasible = false;
    }
    if (!feasible) continue;

    std::vector<int> act;
    for (int m = 0; m < rows; ++m) {
      if (std::abs(A.row(m).dot(x) - b(m)) <= scaled(qopts.act_tol, b(m))) act.push_back(m);
    }
    Eigen::MatrixXd A_act(static_cast<int>(act.size()), n);
    for (size_t t = 0; t < act.size(); ++t) A_act.row(static_cast<int>(t)) = A.row(act[t]);
    MultiplierFit fit =
        fit_stationarity_multipliers(J * x + r, A_act, Eigen::MatrixXd(0, n), qopts, true);
    if (!fit.ok) continue;

    const double xn = x.norm();
    if (!found || xn < best_norm - 1e-12) {
      found = true;
      best_norm = xn;
      best_x = x;
      best_lambda = Eigen::VectorXd::Zero(rows);
      for (size_t t = 0; t < act.size(); ++t) {
        best_lambda(act[t]) = fit.lambda(static_cast<Eigen::Index>(t));
      }
    }
  }

  rep.iterations = tried;
  if (!found) {
    rep.converged = false;
    rep.profile = StrategyProfile::zeros(game);
    rep.shared_multipliers = Eigen::VectorXd::Zero(M);
    rep.multipliers = MultiplierProfile::zeros(game);
    rep.warnings.push_back("no certified variational point found");
    return rep;
  }

  rep.converged = true;
  rep.profile = StrategyProfile::from_flat(game, best_x);
  rep.shared_multipliers = best_lambda.head(M);
  rep.multipliers = MultiplierProfile::zeros(game);
  for (int i = 1; i <= game.player_count(); ++i) {
    const std::vector<int>& local = game.local_constraint_indices(i);
    for (size_t t = 0; t < local.size(); ++t) {
      rep.multipliers.of(i)(static_cast<Eigen::Index>(t)) = rep.shared_multipliers(local[t] - 1);
    }
  }
  for (int m = 1; m <= M; ++m) {
    if (std::abs(game.constraint(m).eval(best_x)) <= scaled(qopts.act_tol, game.constraint(m).b)) {
      rep.active_constraints.push_back(m);
    }
  }
  const Eigen::VectorXd F = J * best_x + r;
  rep.worst_kkt_residual = (F + A.transpose() * best_lambda).lpNorm<Eigen::Infinity>();
  for (int m = 0; m < rows; ++m) {
    rep.complementarity_residual = std::max(
        rep.complementarity_residual, std::abs(best_lambda(m) * (A.row(m).dot(best_x) - b(m))));
  }
  return rep;
}

VeGneReport check_ve_is_gne(const NetworkGame& game, const SolveOptions& opts) {
  VeGneReport rep;
  rep.ve = solve_ve(game, opts);
  if (!rep.ve.converged) {
    throw std::runtime_error("check_ve_is_gne: variational solve produced no certified point");
  }
  rep.certificate = is_gne(rep.ve.profile.flat(), game, opts.certificate_tol);
  rep.holds = rep.certificate.is_equilibrium;
  return rep;
}

MonotonicityReport check_monotonicity(const NetworkGame& game,
                                      const std::vector<std::pair<int, int>>& extra_edges,
                                      const GridSpec& spec, long long grid_cap) {
  MonotonicityReport rep;
  rep.sparse = enumerate_gne_grid(game, spec, grid_cap);
  rep.dense = enumerate_gne_grid(game.densify(extra_edges), spec, grid_cap);

  std::set<std::vector<int>> dense_nodes;
  for (int rrow = 0; rrow < rep.dense.nodes.rows(); ++rrow) {
    std::vector<int> key(static_cast<size_t>(rep.dense.nodes.cols()));
    for (int j = 0; j < rep.dense.nodes.cols(); ++j) key[static_cast<size_t>(j)] = rep.dense.nodes(rrow, j);
    dense_nodes.insert(std::move(key));
  }
  rep.inclusion_holds = true;
  for (int rrow = 0; rrow < rep.sparse.nodes.rows(); ++rrow) {
    std::vector<int> key(static_cast<size_t>(rep.sparse.nodes.cols()));
    for (int j = 0; j < rep.sparse.nodes.cols(); ++j) key[static_cast<size_t>(j)] = rep.sparse.nodes(rrow, j);
    if (dense_nodes.find(key) == dense_nodes.end()) {
      rep.inclusion_holds = false;
      rep.violations.push_back(rep.sparse.points[static_cast<size_t>(rrow)]);
    }
  }
  return rep;
}

}  // namespace gnekit
