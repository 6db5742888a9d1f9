#pragma once

#include <string>

#include "gnekit/game.hpp"
#include "gnekit/market.hpp"

namespace gnekit {

/// Two scalar players with a single shared budget u1 + u2 <= 1 that only player 1
/// enforces. The generalized equilibrium (-1, 2) and the variational point (0, 1)
/// differ, and (0, 1) is an equilibrium only once both players enforce the budget.
NetworkGame build_counterexample();

/// Two scalar players with cost u1^2 + u2^2 each, shared rows u1 + u2 <= 3 and
/// 2 u1 + u2 <= -5, boxes [-100, 100]. Variants 'a'..'d' assign awareness
/// {1}/{2}, {1,2}/{2}, {1}/{1,2}, {1,2}/{1,2}; the graph has no edges.
NetworkGame build_lq_nonunique(char variant);

/// Two scalar generators with cost u_i^2, a capacity row u1 + u2 <= 2 and a demand
/// row u1 + u2 >= 1, boxes [0, 10]. Variants 'a'..'d' as in build_lq_nonunique.
NetworkGame build_energy(char variant);

/// Market parameters used by the bundled quantity/price duality study.
CournotParams pinned_market();

/// Run every bundled study and write its games (JSON), equilibrium clouds (CSV),
/// best-response curves (CSV), and a machine-readable summary.json into out_dir.
/// Creates the directory when missing.
void run_casestudies(const std::string& out_dir);

}  // namespace gnekit
