#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gnekit/awareness.hpp"
#include "gnekit/graph.hpp"

namespace gnekit {

/// Player cost f_i(u) = 0.5 u' Q u + q' u + c over the joint decision vector.
/// Q is symmetrized on construction; the own diagonal block must be PSD for a convex game.
struct QuadraticCost {
  int owner = 0;  // 1-based player index
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  double c = 0.0;

  double eval(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;  // full joint gradient Qu + q
};

/// Shared constraint g_m(u) = a' u - b <= 0 over the joint decision vector.
struct AffineConstraint {
  int index = 0;  // 1-based constraint index
  Eigen::VectorXd a;
  double b = 0.0;

  double eval(const Eigen::VectorXd& u) const { return a.dot(u) - b; }
};

/// Per-player box: lo <= u_i <= hi componentwise.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static Box uniform(int dim, double lo_value, double hi_value);
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;
};

/// A constrained game on a network: players on graph nodes, quadratic costs over the
/// joint decision, shared affine constraints, per-player awareness of those constraints,
/// and per-player box bounds. Effective local feasibility for player i pools the
/// awareness of everyone in i's closed graph neighborhood.
class NetworkGame {
 public:
  NetworkGame() = default;
  NetworkGame(NetworkGraph graph, std::vector<int> block_sizes, std::vector<QuadraticCost> costs,
              std::vector<AffineConstraint> constraints, std::vector<AwarenessLevel> awareness,
              std::vector<Box> boxes);

  int player_count() const { return graph_.node_count(); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  int joint_dim() const { return joint_dim_; }
  int block_size(int i) const;   // 1-based player
  int block_offset(int i) const; // 0-based offset into the flat joint vector

  const NetworkGraph& graph() const { return graph_; }
  const QuadraticCost& cost(int i) const;              // 1-based player
  const AffineConstraint& constraint(int m) const;     // 1-based constraint
  const AwarenessLevel& awareness(int i) const;        // declared level of player i
  const Box& box(int i) const;                         // 1-based player
  const std::vector<QuadraticCost>& costs() const { return costs_; }
  const std::vector<AffineConstraint>& constraints() const { return constraints_; }
  const std::vector<AwarenessLevel>& awareness_levels() const { return awareness_; }
  const std::vector<Box>& boxes() const { return boxes_; }

  /// Union of declared awareness over the closed graph neighborhood of i.
  const AwarenessLevel& pooled_awareness(int i) const;
  /// 1-based indices of the constraints player i enforces (members of pooled awareness).
  const std::vector<int>& local_constraint_indices(int i) const;
  std::vector<AffineConstraint> constraints_for(const AwarenessLevel& level) const;

  /// Joint box bounds stacked over players.
  Eigen::VectorXd joint_lo() const;
  Eigen::VectorXd joint_hi() const;
  bool in_joint_box(const Eigen::VectorXd& u, double tol = 0.0) const;

  /// Same game with every player declared aware of every constraint.
  NetworkGame to_globally_aware() const;
  /// Same game on a graph with additional edges.
  NetworkGame densify(const std::vector<std::pair<int, int>>& extra_edges) const;

 private:
  NetworkGraph graph_;
  std::vector<int> block_sizes_;
  std::vector<int> block_offsets_;
  int joint_dim_ = 0;
  std::vector<QuadraticCost> costs_;
  std::vector<AffineConstraint> constraints_;
  std::vector<AwarenessLevel> awareness_;
  std::vector<Box> boxes_;
  std::vector<AwarenessLevel> pooled_;
};

/// Effective awareness of player i: the union of declared levels over i's closed
/// graph neighborhood.
AwarenessLevel s_map(const NetworkGame& game, int i);

/// The shared constraints player i enforces (members of s_map(game, i)), in
/// increasing index order.
std::vector<AffineConstraint> local_constraint_set(const NetworkGame& game, int i);

}  // namespace gnekit
