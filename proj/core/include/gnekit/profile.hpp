#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gnekit/game.hpp"

namespace gnekit {

/// Joint strategy vector with the game's block structure attached.
class StrategyProfile {
 public:
  StrategyProfile() = default;

  static StrategyProfile zeros(const NetworkGame& game);
  static StrategyProfile from_flat(const NetworkGame& game, Eigen::VectorXd flat);

  const Eigen::VectorXd& flat() const { return flat_; }
  Eigen::VectorXd& flat() { return flat_; }
  int player_count() const { return static_cast<int>(sizes_.size()); }
  int dim() const { return static_cast<int>(flat_.size()); }

  Eigen::VectorBlock<Eigen::VectorXd> block(int i);                    // 1-based player
  Eigen::VectorBlock<const Eigen::VectorXd> block(int i) const;        // 1-based player
  void set_block(int i, const Eigen::VectorXd& value);

 private:
  Eigen::VectorXd flat_;
  std::vector<int> sizes_;
  std::vector<int> offsets_;
};

/// Per-player multiplier vectors, each aligned with that player's local constraint list
/// (the members of its pooled awareness, in increasing constraint order).
class MultiplierProfile {
 public:
  MultiplierProfile() = default;
  static MultiplierProfile zeros(const NetworkGame& game);

  int player_count() const { return static_cast<int>(per_player_.size()); }
  const Eigen::VectorXd& of(int i) const;  // 1-based player
  Eigen::VectorXd& of(int i);
  /// All players' multipliers concatenated in player order.
  Eigen::VectorXd stacked() const;
  static MultiplierProfile from_stacked(const NetworkGame& game, const Eigen::VectorXd& s);

 private:
  std::vector<Eigen::VectorXd> per_player_;
};

}  // namespace gnekit
