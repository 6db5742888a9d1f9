#pragma once

#include <string>
#include <vector>

#include "gnekit/game.hpp"

namespace gnekit {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool fatal = true;  // advisory checks may fail without invalidating the game
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  /// True when every fatal check passed.
  bool ok() const;
  /// True when every check, advisory ones included, passed.
  bool all_passed() const;
};

/// Structural checks a game must satisfy before the solvers are trusted:
/// convex own-block costs, bounded boxes, collectively complete awareness, and a
/// nonempty joint feasible set. Graph connectivity is reported as advisory.
ValidationReport validate(const NetworkGame& game);

}  // namespace gnekit
