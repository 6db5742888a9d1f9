#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnekit/game.hpp"

namespace gnekit {

/// Raised on malformed or dimensionally inconsistent game files.
class GameFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse a game from its JSON text. The document carries `players` (each with
/// `box_lo`, `box_hi`, `Q` row-major over the joint dimension, `q`, optional `c`),
/// `constraints` (each with `a`, `b`), optional `edges` (1-based pairs), and
/// `awareness` (one list of 1-based constraint indices per player). Block sizes are
/// inferred from the box lengths.
NetworkGame parse_game_json(const std::string& text);

/// Load a game from a JSON file. Throws GameFormatError on unreadable or invalid input.
NetworkGame load_game(const std::string& path);

/// Serialize a game to the same JSON schema accepted by parse_game_json.
std::string game_to_json(const NetworkGame& game);
void save_game(const NetworkGame& game, const std::string& path);

/// Shortest decimal round-trip representation of x (17 significant digits at most).
std::string format_double(double x);

/// Write joint points as CSV with header u_1,...,u_n; one row per point.
void write_points_csv(const std::string& path, const std::vector<Eigen::VectorXd>& points,
                      int dim);

/// One-dimensional sweep of a coordinate outside the responding player's block.
struct SweepSpec {
  int coordinate = 1;  // 1-based index into the joint vector
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.01;
};

/// Sweep one rival coordinate over [lo, hi] and record player i's best response at
/// each sample. All other coordinates sit at the box-clamped origin. CSV columns:
/// sweep, br_1..br_d (the player's block), feasible flag. Throws std::invalid_argument
/// when the coordinate lies inside player i's own block or outside the joint vector.
void export_br_curves(const NetworkGame& game, int player, const SweepSpec& sweep,
                      const std::string& out_path);

}  // namespace gnekit
