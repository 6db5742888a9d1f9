#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gnekit/game.hpp"
#include "gnekit/kernel.hpp"
#include "gnekit/profile.hpp"

namespace gnekit {

/// Optimality evidence for a candidate profile: per-player best-response gaps and the
/// feasibility verdict. Converts to true when the profile is a generalized equilibrium.
struct GneCertificate {
  bool feasible = false;
  bool is_equilibrium = false;
  Eigen::VectorXd improvement_gaps;  // f_i(u) - best reachable cost, one per player
  Eigen::VectorXd kkt_residuals;     // best-response stationarity residual per player
  double worst_gap = 0.0;
  double tol = 0.0;
  std::string detail;  // first violated condition when not an equilibrium

  explicit operator bool() const { return is_equilibrium; }
};

/// Test whether u is a generalized equilibrium of the game: u must be feasible for
/// every player's local constraint set (within tol) and no player may improve its own
/// cost by more than tol (scaled) through a unilateral feasible deviation.
GneCertificate is_gne(const Eigen::VectorXd& u, const NetworkGame& game, double tol = 1e-8);

struct SolveOptions {
  enum class Sweep { kJacobi, kGaussSeidel };

  double damping = 0.5;           // step toward the best response per iteration
  double fp_tol = 1e-9;           // fixed-point residual stop (scaled)
  int max_iter = 100000;
  Sweep sweep = Sweep::kJacobi;
  double certificate_tol = 1e-8;  // tolerance handed to the final is_gne check
  KernelOptions kernel;
};

struct EquilibriumReport {
  enum class Kind { kGeneralized, kVariational };

  Kind kind = Kind::kGeneralized;
  StrategyProfile profile;
  MultiplierProfile multipliers;       // per-player, aligned with local constraint lists
  Eigen::VectorXd shared_multipliers;  // one per shared constraint (variational solves)
  std::vector<int> active_constraints; // 1-based shared constraints active at the solution
  int iterations = 0;
  bool converged = false;
  double fixed_point_residual = 0.0;
  double worst_kkt_residual = 0.0;
  double complementarity_residual = 0.0;
  std::vector<std::string> warnings;
  GneCertificate certificate;
};

/// Damped best-response iteration from `start`. Jacobi sweeps update all players from
/// the same iterate; Gauss-Seidel uses the freshest blocks. A player whose feasible
/// slice is empty keeps its block and the report carries a warning.
EquilibriumReport solve_gne_fixed_point(const NetworkGame& game, const Eigen::VectorXd& start,
                                        const SolveOptions& opts = {});

/// Rectangular grid window probed by enumerate_gne_grid.
struct GridSpec {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  double step = 0.01;
};

/// Thrown when a grid enumeration would test more nodes than the cap allows.
class GridCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid points that pass the discretized equilibrium test.
struct EquilibriumSet {
  std::vector<Eigen::VectorXd> points;
  Eigen::MatrixXi nodes;        // lattice index of each point, rows aligned with points
  GridSpec spec;
  double tol_used = 0.0;        // best-response improvement threshold
  double max_slack_used = 0.0;  // largest per-constraint feasibility slack
  long long tested = 0;

  bool contains_node(const Eigen::VectorXi& node) const;
};

/// Exhaustively test every lattice point of the window (clipped to the joint box) with
/// a step-scaled tolerance: a point passes when it is feasible within slack and no
/// player can improve by more than the grid tolerance inside its exact feasible slice.
EquilibriumSet enumerate_gne_grid(const NetworkGame& game, const GridSpec& spec,
                                  long long grid_cap = 10000000);

/// Variational solution: one multiplier vector shared by all players. Solved by joint
/// active-set enumeration over the shared constraints and box faces with a
/// stationarity certificate per candidate; the smallest-norm certified point wins.
EquilibriumReport solve_ve(const NetworkGame& game, const SolveOptions& opts = {});

struct VeGneReport {
  EquilibriumReport ve;
  GneCertificate certificate;  // is_gne verdict for the variational point
  bool holds = false;
};

/// Solve the variational problem and test its solution with is_gne. Throws when the
/// variational solve does not produce a certified point.
VeGneReport check_ve_is_gne(const NetworkGame& game, const SolveOptions& opts = {});

struct MonotonicityReport {
  EquilibriumSet sparse;  // equilibria of the game as given
  EquilibriumSet dense;   // equilibria after adding edges (more pooled awareness)
  bool inclusion_holds = false;
  std::vector<Eigen::VectorXd> violations;  // sparse points missing from the dense set
};

/// Compare grid equilibrium sets before and after densifying the graph: adding edges
/// can only shrink each player's feasible slice, so every sparse-game equilibrium
/// should survive densification.
MonotonicityReport check_monotonicity(const NetworkGame& game,
                                      const std::vector<std::pair<int, int>>& extra_edges,
                                      const GridSpec& spec, long long grid_cap = 10000000);

/// Equilibrium search through the per-player dual construction: each player maximizes
/// its local dual to obtain multipliers, then moves toward the Lagrangian minimizer at
/// those multipliers. Agrees with solve_gne_fixed_point by strong duality.
EquilibriumReport solve_minimax_gne(const NetworkGame& game, const Eigen::VectorXd& start,
                                    const SolveOptions& opts = {});

}  // namespace gnekit
