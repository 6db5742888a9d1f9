#include "gnekit/game.hpp"

#include <stdexcept>

namespace gnekit {

double QuadraticCost::eval(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(Q * u) + q.dot(u) + c;
}

Eigen::VectorXd QuadraticCost::gradient(const Eigen::VectorXd& u) const { return Q * u + q; }

Box Box::uniform(int dim, double lo_value, double hi_value) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(dim, lo_value);
  b.hi = Eigen::VectorXd::Constant(dim, hi_value);
  return b;
}

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
  return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
}

Eigen::VectorXd Box::clamp(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lo).cwiseMin(hi);
}

NetworkGame::NetworkGame(NetworkGraph graph, std::vector<int> block_sizes,
                         std::vector<QuadraticCost> costs,
                         std::vector<AffineConstraint> constraints,
                         std::vector<AwarenessLevel> awareness, std::vector<Box> boxes)
    : graph_(std::move(graph)),
      block_sizes_(std::move(block_sizes)),
      costs_(std::move(costs)),
      constraints_(std::move(constraints)),
      awareness_(std::move(awareness)),
      boxes_(std::move(boxes)) {
  const int n = graph_.node_count();
  if (static_cast<int>(block_sizes_.size()) != n) {
    throw std::invalid_argument("one block size per player required");
  }
  block_offsets_.resize(block_sizes_.size());
  joint_dim_ = 0;
  for (size_t i = 0; i < block_sizes_.size(); ++i) {
    if (block_sizes_[i] < 1) throw std::invalid_argument("block sizes must be positive");
    block_offsets_[i] = joint_dim_;
    joint_dim_ += block_sizes_[i];
  }
  if (static_cast<int>(costs_.size()) != n) {
    throw std::invalid_argument("one cost per player required");
  }
  if (static_cast<int>(awareness_.size()) != n) {
    throw std::invalid_argument("one awareness level per player required");
  }
  if (static_cast<int>(boxes_.size()) != n) {
    throw std::invalid_argument("one box per player required");
  }
  const int m = static_cast<int>(constraints_.size());
  for (size_t i = 0; i < costs_.size(); ++i) {
    auto& cst = costs_[i];
    cst.owner = static_cast<int>(i) + 1;
    if (cst.Q.rows() != joint_dim_ || cst.Q.cols() != joint_dim_ || cst.q.size() != joint_dim_) {
      throw std::invalid_argument("cost dimensions must match the joint decision dimension");
    }
    cst.Q = 0.5 * (cst.Q + cst.Q.transpose()).eval();  // gradients assume symmetry
    if (boxes_[i].dim() != block_sizes_[i]) {
      throw std::invalid_argument("box dimension must match the player block size");
    }
    if (!(boxes_[i].lo.array() <= boxes_[i].hi.array()).all()) {
      throw std::invalid_argument("box lower bounds must not exceed upper bounds");
    }
  }
  for (size_t k = 0; k < constraints_.size(); ++k) {
    constraints_[k].index = static_cast<int>(k) + 1;
    if (constraints_[k].a.size() != joint_dim_) {
      throw std::invalid_argument("constraint dimension must match the joint decision dimension");
    }
  }
  for (const auto& level : awareness_) {
    if (level.max_member() > m) {
      throw std::invalid_argument("awareness refers to a constraint index beyond the last one");
    }
  }
  pooled_.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    AwarenessLevel pool;
    for (int j : graph_.neighborhood(i)) {
      pool = pool.unite(awareness_[static_cast<size_t>(j - 1)]);
    }
    pooled_.push_back(std::move(pool));
  }
}

int NetworkGame::block_size(int i) const { return block_sizes_.at(static_cast<size_t>(i - 1)); }
int NetworkGame::block_offset(int i) const { return block_offsets_.at(static_cast<size_t>(i - 1)); }

const QuadraticCost& NetworkGame::cost(int i) const { return costs_.at(static_cast<size_t>(i - 1)); }
const AffineConstraint& NetworkGame::constraint(int m) const {
  return constraints_.at(static_cast<size_t>(m - 1));
}
const AwarenessLevel& NetworkGame::awareness(int i) const {
  return awareness_.at(static_cast<size_t>(i - 1));
}
const Box& NetworkGame::box(int i) const { return boxes_.at(static_cast<size_t>(i - 1)); }

const AwarenessLevel& NetworkGame::pooled_awareness(int i) const {
  return pooled_.at(static_cast<size_t>(i - 1));
}

const std::vector<int>& NetworkGame::local_constraint_indices(int i) const {
  return pooled_awareness(i).members();
}

std::vector<AffineConstraint> NetworkGame::constraints_for(const AwarenessLevel& level) const {
  std::vector<AffineConstraint> out;
  out.reserve(static_cast<size_t>(level.size()));
  for (int m : level.members()) out.push_back(constraint(m));
  return out;
}

Eigen::VectorXd NetworkGame::joint_lo() const {
  Eigen::VectorXd lo(joint_dim_);
  for (int i = 1; i <= player_count(); ++i) {
    lo.segment(block_offset(i), block_size(i)) = box(i).lo;
  }
  return lo;
}

Eigen::VectorXd NetworkGame::joint_hi() const {
  Eigen::VectorXd hi(joint_dim_);
  for (int i = 1; i <= player_count(); ++i) {
    hi.segment(block_offset(i), block_size(i)) = box(i).hi;
  }
  return hi;
}

bool NetworkGame::in_joint_box(const Eigen::VectorXd& u, double tol) const {
  return (u.array() >= joint_lo().array() - tol).all() &&
         (u.array() <= joint_hi().array() + tol).all();
}

NetworkGame NetworkGame::to_globally_aware() const {
  std::vector<AwarenessLevel> full(static_cast<size_t>(player_count()),
                                   AwarenessLevel::full(constraint_count()));
  return NetworkGame(graph_, block_sizes_, costs_, constraints_, std::move(full), boxes_);
}

NetworkGame NetworkGame::densify(const std::vector<std::pair<int, int>>& extra_edges) const {
  return NetworkGame(graph_.with_extra_edges(extra_edges), block_sizes_, costs_, constraints_,
                     awareness_, boxes_);
}

AwarenessLevel s_map(const NetworkGame& game, int i) { return game.pooled_awareness(i); }

std::vector<AffineConstraint> local_constraint_set(const NetworkGame& game, int i) {
  return game.constraints_for(game.pooled_awareness(i));
}

}  // namespace gnekit
