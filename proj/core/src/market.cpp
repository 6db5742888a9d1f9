#include "gnekit/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gnekit/dual_game.hpp"
#include "gnekit/profile.hpp"

namespace gnekit {

namespace {

void validate_cournot(const CournotParams& p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("cournot: alpha must be positive");
  if (!(p.beta >= 0.0)) throw std::invalid_argument("cournot: beta must be nonnegative");
  if (!(p.k1 + p.beta > 0.0) || !(p.k2 + p.beta > 0.0)) {
    throw std::invalid_argument("cournot: own curvature k_i + beta must be positive");
  }
  if (!(p.q1 > 0.0) || !(p.q2 > 0.0)) {
    throw std::invalid_argument("cournot: delivery floors must be positive");
  }
}

// Price-game costs from the demand expansion of c_i D_i^2 - p_i D_i. Shared by the
// public builder and the matched-game builder, which differ only in validation.
NetworkGame assemble_pricing(const BertrandParams& p, double box_hi) {
  const double curv1 = p.c1 * p.eta * p.eta + p.eta;
  const double curv2 = p.c2 * p.eta * p.eta + p.eta;
  if (!(curv1 > 0.0) || !(curv2 > 0.0)) {
    throw std::invalid_argument("bertrand: own curvature c_i eta^2 + eta must be positive");
  }

  std::vector<QuadraticCost> costs(2);
  const double cs[2] = {p.c1, p.c2};
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    QuadraticCost cost;
    cost.owner = i + 1;
    cost.Q = Eigen::MatrixXd::Zero(2, 2);
    cost.Q(i, i) = 2.0 * (cs[i] * p.eta * p.eta + p.eta);
    cost.Q(j, j) = 2.0 * cs[i] * p.eta * p.eta;
    cost.Q(i, j) = cost.Q(j, i) = -(2.0 * cs[i] * p.eta * p.eta + p.eta);
    cost.q = Eigen::VectorXd::Zero(2);
    cost.q(i) = -(2.0 * cs[i] * p.delta * p.eta + p.delta);
    cost.q(j) = 2.0 * cs[i] * p.delta * p.eta;
    cost.c = cs[i] * p.delta * p.delta;
    costs[static_cast<size_t>(i)] = cost;
  }

  std::vector<Box> boxes(2, Box::uniform(1, 0.0, box_hi));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), {},
                     {AwarenessLevel{}, AwarenessLevel{}}, std::move(boxes));
}

Eigen::Vector2d unconstrained_br_targets(const NetworkGame& game) {
  Eigen::Vector2d t;
  for (int i = 0; i < 2; ++i) {
    const QuadraticCost& cost = game.cost(i + 1);
    t(i) = cost.Q(i, i) > 0.0 ? -cost.q(i) / cost.Q(i, i) : 0.0;
  }
  return t;
}

}  // namespace

DcgCoefficients dcg_coefficients(const CournotParams& p, CoefficientConvention convention) {
  validate_cournot(p);
  DcgCoefficients c;
  const double s1 = 2.0 * p.k1 + p.beta;
  const double s2 = 2.0 * p.k2 + p.beta;
  const double sig1 = 2.0 * (p.k1 + p.beta);
  const double sig2 = 2.0 * (p.k2 + p.beta);
  c.H = sig1 * sig2 - p.beta * p.beta;
  if (std::abs(c.H) <= 1e-12) {
    throw std::invalid_argument("cournot: the stationarity system is singular (H = 0)");
  }
  if (convention == CoefficientConvention::kDerived) {
    c.A1 = 1.0 - p.beta * s1 / c.H;
    c.A2 = 1.0 - p.beta * s2 / c.H;
    c.B1 = -sig1 * s1 / c.H;
    c.B2 = -sig2 * s2 / c.H;
    c.C1 = sig1 * p.q1 - p.alpha * (1.0 + s1 * s1 / c.H);
    c.C2 = sig2 * p.q2 - p.alpha * (1.0 + s2 * s2 / c.H);
  } else {
    c.A1 = 1.0 + p.beta * s1 / c.H;
    c.A2 = 1.0 + p.beta * s2 / c.H;
    c.B1 = sig1 * s1 / c.H;
    c.B2 = sig2 * s2 / c.H;
    c.C1 = p.alpha * sig1 * s1 / c.H + sig1 * p.q1 - p.alpha;
    c.C2 = p.alpha * sig2 * s2 / c.H + sig2 * p.q2 - p.alpha;
  }
  return c;
}

NetworkGame build_cournot(const CournotParams& p) {
  validate_cournot(p);
  const double box_hi = std::max(1e3, 4.0 * std::max(p.q1, p.q2));

  std::vector<QuadraticCost> costs(2);
  const double ks[2] = {p.k1, p.k2};
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    QuadraticCost cost;
    cost.owner = i + 1;
    cost.Q = Eigen::MatrixXd::Zero(2, 2);
    cost.Q(i, i) = 2.0 * (ks[i] + p.beta);
    cost.Q(i, j) = cost.Q(j, i) = p.beta;
    cost.q = Eigen::VectorXd::Zero(2);
    cost.q(i) = -p.alpha;
    costs[static_cast<size_t>(i)] = cost;
  }

  std::vector<AffineConstraint> cons(2);
  const double qs[2] = {p.q1, p.q2};
  for (int m = 0; m < 2; ++m) {
    cons[static_cast<size_t>(m)].index = m + 1;
    cons[static_cast<size_t>(m)].a = Eigen::Vector2d(-1.0, -1.0);
    cons[static_cast<size_t>(m)].b = -qs[m];
  }

  std::vector<Box> boxes(2, Box::uniform(1, 0.0, box_hi));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                     {AwarenessLevel({1}), AwarenessLevel({2})}, std::move(boxes));
}

NetworkGame build_bertrand(const BertrandParams& p) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("bertrand: delta must be positive");
  if (!(p.eta > 0.0)) throw std::invalid_argument("bertrand: eta must be positive");
  NetworkGame probe = assemble_pricing(p, 1.0);
  const Eigen::Vector2d t = unconstrained_br_targets(probe);
  const double box_hi = std::max(1e3, 4.0 * std::max(std::abs(t(0)), std::abs(t(1))));
  return assemble_pricing(p, box_hi);
}

NetworkGame build_dcg(const DcgCoefficients& c) {
  if (!(c.A1 > 0.0) || !(c.A2 > 0.0)) {
    throw std::invalid_argument("dcg: dual curvature A_i must be positive");
  }
  const double scale =
      std::max(std::abs(c.C1) / c.A1, std::abs(c.C2) / c.A2);
  const double box_hi = std::max(1e3, 4.0 * scale);

  std::vector<QuadraticCost> costs(2);
  const double As[2] = {c.A1, c.A2};
  const double Bs[2] = {c.B1, c.B2};
  const double Cs[2] = {c.C1, c.C2};
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    QuadraticCost cost;
    cost.owner = i + 1;
    cost.Q = Eigen::MatrixXd::Zero(2, 2);
    cost.Q(i, i) = As[i];
    cost.Q(i, j) = cost.Q(j, i) = -Bs[i];
    cost.q = Eigen::VectorXd::Zero(2);
    cost.q(i) = -Cs[i];
    costs[static_cast<size_t>(i)] = cost;
  }

  std::vector<Box> boxes(2, Box::uniform(1, 0.0, box_hi));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), {},
                     {AwarenessLevel{}, AwarenessLevel{}}, std::move(boxes));
}

MatchResult match_bertrand(const DcgCoefficients& c) {
  MatchResult out;
  const double sym_gap = std::max({std::abs(c.A1 - c.A2), std::abs(c.B1 - c.B2),
                                   std::abs(c.C1 - c.C2)});
  if (sym_gap > 1e-9) {
    out.message = "matching needs a symmetric reduction: a single demand slope cannot "
                  "reproduce player-dependent stationarity coefficients";
    return out;
  }
  const double eta = c.A1 - c.B1;
  if (std::abs(eta) <= 1e-12) {
    out.message = "matching is singular: A - B = 0 leaves no demand slope";
    return out;
  }
  const double cc = (c.B1 - 0.5 * c.A1) / (eta * eta);
  const double denom = 1.0 + 2.0 * cc * eta;
  if (std::abs(denom) <= 1e-12) {
    out.message = "matching is singular: the price-intercept equation degenerates";
    return out;
  }
  const double delta = c.C1 / denom;

  out.params.delta = delta;
  out.params.eta = eta;
  out.params.c1 = cc;
  out.params.c2 = cc;
  const double As[2] = {c.A1, c.A2};
  const double Bs[2] = {c.B1, c.B2};
  const double Cs[2] = {c.C1, c.C2};
  for (int i = 0; i < 2; ++i) {
    out.residuals.push_back(std::abs(0.5 * As[i] - (cc * eta * eta + eta)));
    out.residuals.push_back(std::abs(Bs[i] - (2.0 * cc * eta * eta + eta)));
    out.residuals.push_back(std::abs(Cs[i] - delta * (2.0 * cc * eta + 1.0)));
  }
  out.ok = true;
  return out;
}

DualityReport check_cg_bg_duality(const CournotParams& params,
                                  CoefficientConvention convention) {
  DualityReport rep;
  rep.coefficients = dcg_coefficients(params, convention);
  rep.match = match_bertrand(rep.coefficients);
  if (!rep.match.ok) {
    rep.warnings.push_back(rep.match.message);
    return rep;
  }
  rep.max_match_residual = 0.0;
  for (double r : rep.match.residuals) rep.max_match_residual = std::max(rep.max_match_residual, r);

  SolveOptions opts;
  opts.damping = 0.5;
  opts.sweep = SolveOptions::Sweep::kJacobi;

  const NetworkGame cournot = build_cournot(params);
  const NetworkGame dcg = build_dcg(rep.coefficients);

  EquilibriumReport cg = solve_gne_fixed_point(cournot, Eigen::Vector2d::Zero(), opts);
  EquilibriumReport dg = solve_gne_fixed_point(dcg, Eigen::Vector2d::Zero(), opts);

  NetworkGame pricing;
  EquilibriumReport bg;
  bool pricing_ok = true;
  try {
    const Eigen::Vector2d targets(rep.coefficients.C1 / rep.coefficients.A1,
                                  rep.coefficients.C2 / rep.coefficients.A2);
    const double box_hi =
        std::max(1e3, 4.0 * std::max(std::abs(targets(0)), std::abs(targets(1))));
    pricing = assemble_pricing(rep.match.params, box_hi);
    bg = solve_gne_fixed_point(pricing, Eigen::Vector2d::Zero(), opts);
  } catch (const std::invalid_argument& err) {
    pricing_ok = false;
    std::ostringstream msg;
    msg << "matched price game is not convex: " << err.what();
    rep.warnings.push_back(msg.str());
  }

  rep.converged = cg.converged && dg.converged && pricing_ok && bg.converged;
  for (const auto* r : {&cg, &dg}) {
    for (const std::string& w : r->warnings) rep.warnings.push_back(w);
  }
  if (!rep.converged) {
    if (rep.warnings.empty()) rep.warnings.push_back("a formulation failed to converge");
    return rep;
  }

  rep.cournot_quantities = cg.profile.flat();
  rep.dcg_multipliers = dg.profile.flat();
  rep.bertrand_prices = bg.profile.flat();
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd& mu_i = cg.multipliers.of(i + 1);
    rep.cournot_multipliers(i) = mu_i.size() > 0 ? mu_i(0) : 0.0;
  }

  rep.max_multiplier_gap = std::max(
      {(rep.cournot_multipliers - rep.dcg_multipliers).lpNorm<Eigen::Infinity>(),
       (rep.cournot_multipliers - rep.bertrand_prices).lpNorm<Eigen::Infinity>(),
       (rep.dcg_multipliers - rep.bertrand_prices).lpNorm<Eigen::Infinity>()});

  // Recover the quantities from the dual strategies through the inner fixed point.
  MultiplierProfile mu = MultiplierProfile::zeros(cournot);
  for (int i = 1; i <= 2; ++i) {
    mu.of(i) = Eigen::VectorXd::Constant(1, rep.dcg_multipliers(i - 1));
  }
  InnerFixedPoint inner =
      inner_fixed_point_V(mu, cournot, Eigen::Vector2d::Zero(), opts);
  if (inner.converged) {
    rep.v_crosscheck_gap =
        (inner.profile.flat() - rep.cournot_quantities).lpNorm<Eigen::Infinity>();
  } else {
    rep.warnings.push_back("quantity recovery from the dual multipliers did not converge");
    rep.v_crosscheck_gap = std::numeric_limits<double>::infinity();
  }

  rep.ok = rep.converged && rep.max_match_residual <= 1e-10 &&
           rep.max_multiplier_gap <= 1e-6 && rep.v_crosscheck_gap <= 1e-6 &&
           cg.certificate.is_equilibrium;
  return rep;
}

}  // namespace gnekit
