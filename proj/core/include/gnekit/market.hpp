#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/gne.hpp"

namespace gnekit {

/// Two-firm quantity competition with linear inverse demand p = alpha - beta (u1 + u2),
/// quadratic production cost k_i u_i^2, and a per-firm delivery floor u1 + u2 >= q_i
/// that only firm i enforces.
struct CournotParams {
  double alpha = 2.0;
  double beta = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double q1 = 3.0;
  double q2 = 3.0;
};

/// Two-firm price competition with linear demand D_i(p) = delta - eta p_i + eta p_{-i}
/// and cost c_i per squared unit served: f_i(p) = c_i D_i(p)^2 - p_i D_i(p).
struct BertrandParams {
  double delta = 1.0;
  double eta = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// How the dual-coefficient reduction is computed. kDerived recomputes the
/// coefficients from the quantity game's stationarity system; kAsPublished keeps a
/// historical sign/offset convention retained for comparison and enabled on the
/// command line with --strict-paper-coefficients.
enum class CoefficientConvention { kDerived, kAsPublished };

/// Coefficients of the reduced dual game in the delivery multipliers:
/// player i minimizes 0.5 A_i mu_i^2 - B_i mu_i mu_{-i} - C_i mu_i.
struct DcgCoefficients {
  double A1 = 0.0, A2 = 0.0;
  double B1 = 0.0, B2 = 0.0;
  double C1 = 0.0, C2 = 0.0;
  double H = 0.0;  // determinant of the quantity stationarity system
};

DcgCoefficients dcg_coefficients(const CournotParams& params,
                                 CoefficientConvention convention = CoefficientConvention::kDerived);

/// The quantity game as a constrained network game: two scalar players, no edges,
/// constraint m = i is firm i's delivery floor, and firm i is aware only of m = i.
NetworkGame build_cournot(const CournotParams& params);

/// The price game as an unconstrained network game (demands must be positive: delta > 0,
/// eta > 0, and each own curvature c_i eta^2 + eta > 0).
NetworkGame build_bertrand(const BertrandParams& params);

/// The reduced dual game as an unconstrained network game over multipliers mu >= 0.
/// Requires A_i > 0 (a convex dual); throws std::invalid_argument otherwise.
NetworkGame build_dcg(const DcgCoefficients& coeffs);

/// Price-game parameters reproducing the dual game's stationarity structure.
struct MatchResult {
  bool ok = false;
  BertrandParams params;
  std::vector<double> residuals;  // six matching identities, one per coefficient
  std::string message;
};

/// Solve the coefficient-matching equations 0.5 A_i = c eta^2 + eta,
/// B_i = 2 c eta^2 + eta, C_i = delta (2 c eta + 1). Requires a symmetric
/// reduction (A1 = A2 etc.); asymmetric coefficients cannot be matched by a
/// single demand slope and the result reports ok = false.
MatchResult match_bertrand(const DcgCoefficients& coeffs);

/// Equivalence of the three market formulations. Solves the quantity game, the
/// reduced dual game, and the matched price game, each from the origin with
/// damping 0.5, and compares delivery multipliers, dual strategies, and prices.
struct DualityReport {
  DcgCoefficients coefficients;
  MatchResult match;
  Eigen::Vector2d cournot_quantities = Eigen::Vector2d::Zero();
  Eigen::Vector2d cournot_multipliers = Eigen::Vector2d::Zero();
  Eigen::Vector2d dcg_multipliers = Eigen::Vector2d::Zero();
  Eigen::Vector2d bertrand_prices = Eigen::Vector2d::Zero();
  double max_multiplier_gap = 0.0;  // pairwise gap across the three formulations
  double max_match_residual = 0.0;
  double v_crosscheck_gap = 0.0;  // quantity recovery from the dual multipliers
  bool converged = false;
  bool ok = false;
  std::vector<std::string> warnings;
};

DualityReport check_cg_bg_duality(const CournotParams& params,
                                  CoefficientConvention convention = CoefficientConvention::kDerived);

}  // namespace gnekit
