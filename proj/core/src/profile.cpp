#include "gnekit/profile.hpp"

#include <stdexcept>

namespace gnekit {

StrategyProfile StrategyProfile::zeros(const NetworkGame& game) {
  return from_flat(game, Eigen::VectorXd::Zero(game.joint_dim()));
}

StrategyProfile StrategyProfile::from_flat(const NetworkGame& game, Eigen::VectorXd flat) {
  if (flat.size() != game.joint_dim()) {
    throw std::invalid_argument("profile length must match the joint decision dimension");
  }
  StrategyProfile p;
  p.flat_ = std::move(flat);
  p.sizes_.resize(static_cast<size_t>(game.player_count()));
  p.offsets_.resize(static_cast<size_t>(game.player_count()));
  for (int i = 1; i <= game.player_count(); ++i) {
    p.sizes_[static_cast<size_t>(i - 1)] = game.block_size(i);
    p.offsets_[static_cast<size_t>(i - 1)] = game.block_offset(i);
  }
  return p;
}

Eigen::VectorBlock<Eigen::VectorXd> StrategyProfile::block(int i) {
  return flat_.segment(offsets_.at(static_cast<size_t>(i - 1)),
                       sizes_.at(static_cast<size_t>(i - 1)));
}

Eigen::VectorBlock<const Eigen::VectorXd> StrategyProfile::block(int i) const {
  return flat_.segment(offsets_.at(static_cast<size_t>(i - 1)),
                       sizes_.at(static_cast<size_t>(i - 1)));
}

void StrategyProfile::set_block(int i, const Eigen::VectorXd& value) {
  if (value.size() != sizes_.at(static_cast<size_t>(i - 1))) {
    throw std::invalid_argument("block value has the wrong length");
  }
  block(i) = value;
}

MultiplierProfile MultiplierProfile::zeros(const NetworkGame& game) {
  MultiplierProfile mp;
  mp.per_player_.reserve(static_cast<size_t>(game.player_count()));
  for (int i = 1; i <= game.player_count(); ++i) {
    mp.per_player_.push_back(
        Eigen::VectorXd::Zero(static_cast<int>(game.local_constraint_indices(i).size())));
  }
  return mp;
}

const Eigen::VectorXd& MultiplierProfile::of(int i) const {
  return per_player_.at(static_cast<size_t>(i - 1));
}

Eigen::VectorXd& MultiplierProfile::of(int i) { return per_player_.at(static_cast<size_t>(i - 1)); }

Eigen::VectorXd MultiplierProfile::stacked() const {
  int total = 0;
  for (const auto& v : per_player_) total += static_cast<int>(v.size());
  Eigen::VectorXd s(total);
  int at = 0;
  for (const auto& v : per_player_) {
    s.segment(at, v.size()) = v;
    at += static_cast<int>(v.size());
  }
  return s;
}

MultiplierProfile MultiplierProfile::from_stacked(const NetworkGame& game,
                                                  const Eigen::VectorXd& s) {
  MultiplierProfile mp = zeros(game);
  int at = 0;
  for (int i = 1; i <= game.player_count(); ++i) {
    const int k = static_cast<int>(mp.of(i).size());
    if (at + k > s.size()) throw std::invalid_argument("stacked multiplier vector too short");
    mp.of(i) = s.segment(at, k);
    at += k;
  }
  if (at != s.size()) throw std::invalid_argument("stacked multiplier vector too long");
  return mp;
}

}  // namespace gnekit
