#include "gnekit/dual_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gnekit/qp.hpp"

namespace gnekit {

namespace {

constexpr double kMuCap = 1e8;  // multiplier cap; hitting it marks the dual unbounded

double scaled(double tol, double ref) { return tol * std::max(1.0, std::abs(ref)); }

Eigen::VectorXd clamp_into_boxes(Eigen::VectorXd u, const NetworkGame& game) {
  for (int i = 1; i <= game.player_count(); ++i) {
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    u.segment(off, d) = game.box(i).clamp(u.segment(off, d));
  }
  return u;
}

// Stationarity residual of L_i(., u_{-i}; mu_i) at v over the box: interior
// coordinates need a vanishing gradient, face coordinates the matching sign.
double lagrangian_stationarity(int i, const Eigen::VectorXd& v, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& mu_i, const NetworkGame& game) {
  const int off = game.block_offset(i);
  const int d = game.block_size(i);
  Eigen::VectorXd w = u;
  w.segment(off, d) = v;
  Eigen::VectorXd g = partial_gradient(i, w, game);
  const std::vector<int>& local = game.local_constraint_indices(i);
  for (size_t k = 0; k < local.size(); ++k) {
    g += mu_i(static_cast<Eigen::Index>(k)) * game.constraint(local[k]).a.segment(off, d);
  }
  const Box& box = game.box(i);
  double worst = 0.0;
  const double face_tol = 1e-9;
  for (int j = 0; j < d; ++j) {
    const bool at_lo = v(j) <= box.lo(j) + face_tol;
    const bool at_hi = v(j) >= box.hi(j) - face_tol;
    if (at_lo && g(j) >= 0.0) continue;
    if (at_hi && g(j) <= 0.0) continue;
    if (at_lo) {
      worst = std::max(worst, -g(j));
    } else if (at_hi) {
      worst = std::max(worst, g(j));
    } else {
      worst = std::max(worst, std::abs(g(j)));
    }
  }
  return worst;
}

}  // namespace

Eigen::VectorXd inner_min_T(int i, const Eigen::VectorXd& u, const Eigen::VectorXd& mu_i,
                            const NetworkGame& game, const KernelOptions& opts) {
  if (u.size() != game.joint_dim()) {
    throw std::invalid_argument("inner_min_T: profile dimension does not match the game");
  }
  const std::vector<int>& local = game.local_constraint_indices(i);
  if (mu_i.size() != static_cast<Eigen::Index>(local.size())) {
    throw std::invalid_argument("inner_min_T: multiplier dimension does not match the player");
  }
  const int off = game.block_offset(i);
  const int d = game.block_size(i);

  const Eigen::MatrixXd P = game.cost(i).Q.block(off, off, d, d);
  Eigen::VectorXd c = partial_gradient(i, u, game) - P * u.segment(off, d);
  for (size_t k = 0; k < local.size(); ++k) {
    c += mu_i(static_cast<Eigen::Index>(k)) * game.constraint(local[k]).a.segment(off, d);
  }

  Eigen::MatrixXd A(0, d);
  Eigen::VectorXd b(0);
  append_box_rows(A, b, game.box(i).lo, game.box(i).hi);
  QpResult qp = solve_qp(P, c, A, b, opts.qp);
  if (qp.status != QpResult::Status::kSolved) {
    throw std::runtime_error("inner_min_T: box-constrained minimization failed");
  }
  return qp.x;
}

InnerFixedPoint inner_fixed_point_V(const MultiplierProfile& mu, const NetworkGame& game,
                                    const Eigen::VectorXd& start, const SolveOptions& opts) {
  if (start.size() != game.joint_dim()) {
    throw std::invalid_argument("inner_fixed_point_V: start dimension does not match the game");
  }
  const int N = game.player_count();

  InnerFixedPoint out;
  Eigen::VectorXd u = clamp_into_boxes(start, game);
  double residual = std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  int since_best = 0;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    Eigen::VectorXd next = u;
    for (int i = 1; i <= N; ++i) {
      const int off = game.block_offset(i);
      const int d = game.block_size(i);
      const Eigen::VectorXd& base = (opts.sweep == SolveOptions::Sweep::kGaussSeidel) ? next : u;
      const Eigen::VectorXd vi = inner_min_T(i, base, mu.of(i), game, opts.kernel);
      next.segment(off, d) = (1.0 - opts.damping) * base.segment(off, d) + opts.damping * vi;
    }
    residual = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    if (residual <= scaled(opts.fp_tol, u.lpNorm<Eigen::Infinity>())) {
      ++it;
      break;
    }
    if (residual < best_residual * (1.0 - 1e-3)) {
      best_residual = residual;
      since_best = 0;
    } else if (++since_best >= 500) {
      out.warnings.push_back(
          "inner fixed point stalled; the Lagrangian best-response map does not contract "
          "at these multipliers");
      break;
    }
  }
  out.iterations = it;
  out.residual = residual;
  out.converged = residual <= scaled(opts.fp_tol, u.lpNorm<Eigen::Infinity>());
  out.profile = StrategyProfile::from_flat(game, u);
  return out;
}

OuterMaxResult outer_max_K(int i, const Eigen::VectorXd& u, const NetworkGame& game,
                           const KernelOptions& opts) {
  if (u.size() != game.joint_dim()) {
    throw std::invalid_argument("outer_max_K: profile dimension does not match the game");
  }
  const int off = game.block_offset(i);
  const int d = game.block_size(i);
  const std::vector<int>& local = game.local_constraint_indices(i);
  const int K = static_cast<int>(local.size());

  OuterMaxResult out;

  if (K == 0) {
    out.status = OuterMaxResult::Status::kSolved;
    out.mu = Eigen::VectorXd(0);
    const Eigen::VectorXd v = inner_min_T(i, u, out.mu, game, opts);
    out.dual_value = eval_lagrangian_i(i, v, u, out.mu, game);
    return out;
  }

  const Eigen::MatrixXd P = game.cost(i).Q.block(off, off, d, d);
  Eigen::VectorXd u_masked = u;
  u_masked.segment(off, d).setZero();
  const Eigen::VectorXd c0 = partial_gradient(i, u_masked, game);
  Eigen::MatrixXd G(d, K);
  Eigen::VectorXd rho(K);
  for (int k = 0; k < K; ++k) {
    const AffineConstraint& con = game.constraint(local[static_cast<size_t>(k)]);
    G.col(k) = con.a.segment(off, d);
    rho(k) = con.a.dot(u_masked) - con.b;
  }

  // A constraint the player cannot influence contributes mu_k * rho(k) alone: a
  // positive residual makes the dual grow without bound.
  for (int k = 0; k < K; ++k) {
    if (G.col(k).lpNorm<Eigen::Infinity>() <= 1e-14 && rho(k) > 1e-10) {
      out.status = OuterMaxResult::Status::kInfeasible;
      std::ostringstream msg;
      msg << "constraint " << local[static_cast<size_t>(k)]
          << " is violated by the fixed blocks and out of the player's control";
      out.warnings.push_back(msg.str());
      return out;
    }
  }

  const Box& box = game.box(i);
  QpOptions qopts = opts.qp;
  qopts.enumeration_cap = 20;

  // 3^d activity patterns; beyond ten own dimensions fall back to the primal recovery.
  const bool enumerate_patterns = d <= 10;

  bool found = false;
  double best_val = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_mu;

  std::vector<int> pat(static_cast<size_t>(d), 0);  // 0 free, 1 at lo, 2 at hi
  while (enumerate_patterns) {
    std::vector<int> free_idx, lo_idx, hi_idx;
    for (int j = 0; j < d; ++j) {
      if (pat[static_cast<size_t>(j)] == 0) free_idx.push_back(j);
      if (pat[static_cast<size_t>(j)] == 1) lo_idx.push_back(j);
      if (pat[static_cast<size_t>(j)] == 2) hi_idx.push_back(j);
    }
    const int nf = static_cast<int>(free_idx.size());

    // Inner minimizer on this pattern as an affine map of mu: v(mu) = a + B mu.
    Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
    for (int j : lo_idx) a(j) = box.lo(j);
    for (int j : hi_idx) a(j) = box.hi(j);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(d, K);
    if (nf > 0) {
      Eigen::MatrixXd Pff(nf, nf);
      Eigen::MatrixXd Gf(nf, K);
      Eigen::VectorXd rhs0(nf);
      for (int s = 0; s < nf; ++s) {
        for (int t = 0; t < nf; ++t) Pff(s, t) = P(free_idx[static_cast<size_t>(s)], free_idx[static_cast<size_t>(t)]);
        Gf.row(s) = G.row(free_idx[static_cast<size_t>(s)]);
        double fixed_part = 0.0;
        for (int j : lo_idx) fixed_part += P(free_idx[static_cast<size_t>(s)], j) * box.lo(j);
        for (int j : hi_idx) fixed_part += P(free_idx[static_cast<size_t>(s)], j) * box.hi(j);
        rhs0(s) = c0(free_idx[static_cast<size_t>(s)]) + fixed_part;
      }
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Pff);
      const Eigen::VectorXd alpha = cod.solve(-rhs0);
      const Eigen::MatrixXd Bf = cod.solve(-Gf);
      for (int s = 0; s < nf; ++s) {
        a(free_idx[static_cast<size_t>(s)]) = alpha(s);
        B.row(free_idx[static_cast<size_t>(s)]) = Bf.row(s);
      }
    }

    const Eigen::MatrixXd R = P * B + G;   // d x K, gradient sensitivity to mu
    const Eigen::VectorXd t0 = P * a + c0; // gradient at mu = 0

    // Validity region of the pattern plus mu >= 0 and the cap.
    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> rhs_rows;
    for (int j : free_idx) {
      rows.push_back(B.row(j));
      rhs_rows.push_back(box.hi(j) - a(j));
      rows.push_back(-B.row(j));
      rhs_rows.push_back(a(j) - box.lo(j));
    }
    for (int j : lo_idx) {  // gradient must push up at the lower face
      rows.push_back(-R.row(j));
      rhs_rows.push_back(t0(j));
    }
    for (int j : hi_idx) {  // gradient must push down at the upper face
      rows.push_back(R.row(j));
      rhs_rows.push_back(-t0(j));
    }
    for (int k = 0; k < K; ++k) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(K);
      row(k) = -1.0;
      rows.push_back(row);
      rhs_rows.push_back(0.0);
      row(k) = 1.0;
      rows.push_back(row);
      rhs_rows.push_back(kMuCap);
    }
    Eigen::MatrixXd Am(static_cast<int>(rows.size()), K);
    Eigen::VectorXd bm(static_cast<int>(rows.size()));
    for (size_t s = 0; s < rows.size(); ++s) {
      Am.row(static_cast<int>(s)) = rows[s];
      bm(static_cast<int>(s)) = rhs_rows[s];
    }

    // Free-coordinate stationarity is exact for invertible blocks; keep it as an
    // equality only when the pseudo-inverse left a residual dependence.
    std::vector<int> eq_rows;
    for (int j : free_idx) {
      if (R.row(j).lpNorm<Eigen::Infinity>() > 1e-10 || std::abs(t0(j)) > 1e-10) {
        eq_rows.push_back(j);
      }
    }
    Eigen::MatrixXd Aeq(static_cast<int>(eq_rows.size()), K);
    Eigen::VectorXd beq(static_cast<int>(eq_rows.size()));
    for (size_t s = 0; s < eq_rows.size(); ++s) {
      Aeq.row(static_cast<int>(s)) = R.row(eq_rows[s]);
      beq(static_cast<int>(s)) = -t0(eq_rows[s]);
    }

    // Dual restricted to the pattern: d(mu) = 0.5 mu'D mu + e'mu + const, concave.
    Eigen::MatrixXd D = B.transpose() * P * B + G.transpose() * B + B.transpose() * G;
    D = 0.5 * (D + D.transpose());
    const Eigen::VectorXd e = B.transpose() * t0 + G.transpose() * a + rho;

    QpResult q = solve_qp(-D, -e, Am, bm, Aeq, beq, qopts);
    if (q.status == QpResult::Status::kSolved) {
      const Eigen::VectorXd mu_c = q.x.cwiseMax(0.0);
      const Eigen::VectorXd v_exact = inner_min_T(i, u, mu_c, game, opts);
      const double val = eval_lagrangian_i(i, v_exact, u, mu_c, game);
      const double band = 1e-12 * std::max(1.0, std::abs(best_val));
      if (!found || val > best_val + band ||
          (val >= best_val - band && mu_c.norm() < best_mu.norm())) {
        found = true;
        best_val = std::max(best_val, val);
        best_mu = mu_c;
      }
    }

    int j = 0;
    while (j < d && ++pat[static_cast<size_t>(j)] == 3) {
      pat[static_cast<size_t>(j)] = 0;
      ++j;
    }
    if (j == d) break;
  }

  if (!found) {
    BestResponseResult br = best_response(i, u, game, opts);
    if (br.status == BestResponseResult::Status::kInfeasible) {
      out.status = OuterMaxResult::Status::kInfeasible;
      return out;
    }
    if (br.status == BestResponseResult::Status::kSolved) {
      out.status = OuterMaxResult::Status::kSolved;
      out.mu = br.multipliers;
      out.dual_value = br.objective_value;
      out.warnings.push_back("dual maximizer recovered from the primal solve");
      return out;
    }
    out.status = OuterMaxResult::Status::kNotConverged;
    return out;
  }

  if (best_mu.size() > 0 && best_mu.maxCoeff() >= 0.99 * kMuCap) {
    out.status = OuterMaxResult::Status::kInfeasible;
    out.warnings.push_back("dual unbounded: the player's feasible slice is empty");
    return out;
  }

  out.status = OuterMaxResult::Status::kSolved;
  out.mu = best_mu;
  out.dual_value = best_val;
  return out;
}

DualGameResult solve_dual_game(const NetworkGame& game, const MultiplierProfile& start_mu,
                               const SolveOptions& opts) {
  const int N = game.player_count();
  if (start_mu.player_count() != N) {
    throw std::invalid_argument("solve_dual_game: multiplier profile does not match the game");
  }
  if (!(opts.damping > 0.0) || opts.damping > 1.0) {
    throw std::invalid_argument("solve_dual_game: damping must lie in (0, 1]");
  }

  DualGameResult out;
  MultiplierProfile mu = start_mu;
  for (int i = 1; i <= N; ++i) {
    if (mu.of(i).size() !=
        static_cast<Eigen::Index>(game.local_constraint_indices(i).size())) {
      throw std::invalid_argument("solve_dual_game: multiplier block size mismatch");
    }
    mu.of(i) = mu.of(i).cwiseMax(0.0);
  }

  Eigen::VectorXd u = clamp_into_boxes(Eigen::VectorXd::Zero(game.joint_dim()), game);
  std::vector<bool> warned(static_cast<size_t>(N) + 1, false);
  double residual = std::numeric_limits<double>::infinity();
  bool inner_ok = false;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    InnerFixedPoint inner = inner_fixed_point_V(mu, game, u, opts);
    for (const std::string& w : inner.warnings) out.warnings.push_back(w);
    inner_ok = inner.converged;
    if (!inner.converged) {
      out.warnings.push_back("inner fixed point failed to converge; stopping the outer loop");
      u = inner.profile.flat();
      break;
    }
    u = inner.profile.flat();

    MultiplierProfile next = mu;
    residual = 0.0;
    for (int i = 1; i <= N; ++i) {
      OuterMaxResult K = outer_max_K(i, u, game, opts.kernel);
      if (K.status != OuterMaxResult::Status::kSolved) {
        if (!warned[static_cast<size_t>(i)]) {
          std::ostringstream msg;
          msg << "player " << i << " dual "
              << (K.status == OuterMaxResult::Status::kInfeasible ? "is unbounded"
                                                                  : "did not converge")
              << " at outer iteration " << it << "; holding its multipliers";
          out.warnings.push_back(msg.str());
          warned[static_cast<size_t>(i)] = true;
        }
        continue;
      }
      next.of(i) = (1.0 - opts.damping) * mu.of(i) + opts.damping * K.mu;
      if (next.of(i).size() > 0) {
        residual = std::max(residual, (next.of(i) - mu.of(i)).lpNorm<Eigen::Infinity>());
      }
    }
    mu = next;
    if (residual <= scaled(opts.fp_tol, mu.stacked().size() > 0
                                            ? mu.stacked().lpNorm<Eigen::Infinity>()
                                            : 0.0)) {
      ++it;
      break;
    }
  }

  out.iterations = it;
  out.residual = residual;
  out.mu = mu;
  out.converged =
      inner_ok && residual <= scaled(opts.fp_tol, mu.stacked().size() > 0
                                                      ? mu.stacked().lpNorm<Eigen::Infinity>()
                                                      : 0.0);
  if (!out.converged && out.warnings.empty()) {
    out.warnings.push_back("outer multiplier iteration did not reach the requested tolerance");
  }

  InnerFixedPoint final_inner = inner_fixed_point_V(mu, game, u, opts);
  out.profile = final_inner.profile;
  const Eigen::VectorXd uf = out.profile.flat();
  out.dual_value = 0.0;
  for (int i = 1; i <= N; ++i) {
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    out.dual_value += eval_lagrangian_i(i, uf.segment(off, d), uf, mu.of(i), game);
    const std::vector<int>& local = game.local_constraint_indices(i);
    for (size_t k = 0; k < local.size(); ++k) {
      out.complementarity_residual =
          std::max(out.complementarity_residual,
                   std::abs(mu.of(i)(static_cast<Eigen::Index>(k)) *
                            game.constraint(local[k]).eval(uf)));
    }
  }
  out.certificate = is_gne(uf, game, opts.certificate_tol);
  return out;
}

EquilibriumReport solve_minimax_gne(const NetworkGame& game, const Eigen::VectorXd& start,
                                    const SolveOptions& opts) {
  if (start.size() != game.joint_dim()) {
    throw std::invalid_argument("solve_minimax_gne: start dimension does not match the game");
  }
  if (!(opts.damping > 0.0) || opts.damping > 1.0) {
    throw std::invalid_argument("solve_minimax_gne: damping must lie in (0, 1]");
  }
  const int N = game.player_count();

  EquilibriumReport rep;
  rep.kind = EquilibriumReport::Kind::kGeneralized;

  Eigen::VectorXd u = clamp_into_boxes(start, game);
  std::vector<bool> warned(static_cast<size_t>(N) + 1, false);
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    Eigen::VectorXd next = u;
    for (int i = 1; i <= N; ++i) {
      const int off = game.block_offset(i);
      const int d = game.block_size(i);
      const Eigen::VectorXd& base = (opts.sweep == SolveOptions::Sweep::kGaussSeidel) ? next : u;
      OuterMaxResult K = outer_max_K(i, base, game, opts.kernel);
      if (K.status != OuterMaxResult::Status::kSolved) {
        if (!warned[static_cast<size_t>(i)]) {
          std::ostringstream msg;
          msg << "player " << i << " dual "
              << (K.status == OuterMaxResult::Status::kInfeasible ? "is unbounded"
                                                                  : "did not converge")
              << " at iteration " << it << "; holding its block";
          rep.warnings.push_back(msg.str());
          warned[static_cast<size_t>(i)] = true;
        }
        continue;
      }
      const Eigen::VectorXd vi = inner_min_T(i, base, K.mu, game, opts.kernel);
      next.segment(off, d) = (1.0 - opts.damping) * base.segment(off, d) + opts.damping * vi;
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
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    OuterMaxResult K = outer_max_K(i, u, game, opts.kernel);
    if (K.status != OuterMaxResult::Status::kSolved) continue;
    rep.multipliers.of(i) = K.mu;
    rep.worst_kkt_residual = std::max(
        rep.worst_kkt_residual, lagrangian_stationarity(i, u.segment(off, d), u, K.mu, game));
    const std::vector<int>& local = game.local_constraint_indices(i);
    for (size_t k = 0; k < local.size(); ++k) {
      const double slack = game.constraint(local[k]).eval(u);
      rep.complementarity_residual = std::max(
          rep.complementarity_residual,
          std::abs(K.mu(static_cast<Eigen::Index>(k)) * slack));
      if (std::abs(slack) <= scaled(1e-7, game.constraint(local[k]).b)) {
        active.insert(local[k]);
      }
    }
  }
  rep.active_constraints.assign(active.begin(), active.end());
  rep.certificate = is_gne(u, game, opts.certificate_tol);
  return rep;
}

DualEquivalenceReport check_dual_equivalence(const NetworkGame& game, int trials, unsigned seed,
                                             const SolveOptions& opts) {
  DualEquivalenceReport rep;
  rep.trials = trials;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Eigen::VectorXd lo = game.joint_lo();
  const Eigen::VectorXd hi = game.joint_hi();
  const int n = game.joint_dim();

  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd u0(n);
    for (int j = 0; j < n; ++j) u0(j) = lo(j) + unit(rng) * (hi(j) - lo(j));
    MultiplierProfile mu0 = MultiplierProfile::zeros(game);
    for (int i = 1; i <= game.player_count(); ++i) {
      for (Eigen::Index k = 0; k < mu0.of(i).size(); ++k) mu0.of(i)(k) = 2.0 * unit(rng);
    }

    EquilibriumReport mm = solve_minimax_gne(game, u0, opts);
    DualGameResult dg = solve_dual_game(game, mu0, opts);
    if (!mm.converged || !dg.converged) {
      std::ostringstream msg;
      msg << "trial " << t << ": "
          << (!mm.converged ? "minimax solve" : "dual-game solve") << " did not converge";
      rep.warnings.push_back(msg.str());
      continue;
    }
    ++rep.converged_pairs;

    rep.max_profile_gap = std::max(
        rep.max_profile_gap,
        (mm.profile.flat() - dg.profile.flat()).lpNorm<Eigen::Infinity>());
    rep.all_certified = rep.all_certified && mm.certificate.is_equilibrium &&
                        dg.certificate.is_equilibrium;
    rep.max_complementarity = std::max(
        rep.max_complementarity,
        std::max(mm.complementarity_residual, dg.complementarity_residual));

    const Eigen::VectorXd ustar = mm.profile.flat();
    for (int i = 1; i <= game.player_count(); ++i) {
      const int off = game.block_offset(i);
      const int d = game.block_size(i);
      OuterMaxResult K = outer_max_K(i, ustar, game, opts.kernel);
      if (K.status == OuterMaxResult::Status::kSolved && K.mu.size() > 0) {
        rep.max_multiplier_identity_gap =
            std::max(rep.max_multiplier_identity_gap,
                     (K.mu - mm.multipliers.of(i)).lpNorm<Eigen::Infinity>());
      }
      const Eigen::VectorXd Ti = inner_min_T(i, ustar, mm.multipliers.of(i), game, opts.kernel);
      rep.max_strategy_identity_gap =
          std::max(rep.max_strategy_identity_gap,
                   (Ti - ustar.segment(off, d)).lpNorm<Eigen::Infinity>());
    }
  }

  rep.ok = rep.converged_pairs > 0 && rep.max_profile_gap <= 1e-6 && rep.all_certified &&
           rep.max_multiplier_identity_gap <= 1e-6 && rep.max_strategy_identity_gap <= 1e-6;
  return rep;
}

}  // namespace gnekit
