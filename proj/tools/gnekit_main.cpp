// Command line front end: load a game, run one solver or check, print a summary,
// and optionally write a machine-readable JSON/CSV result.
//
// Exit codes: 0 success, 2 unreadable input or bad arguments, 3 validation or
// capacity refusal, 4 solver did not converge (or a checked property failed).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnekit/casestudies.hpp"
#include "gnekit/dual_game.hpp"
#include "gnekit/gne.hpp"
#include "gnekit/io.hpp"
#include "gnekit/market.hpp"
#include "gnekit/validation.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitNoConverge = 4;

json vec_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json multipliers_json(const gnekit::MultiplierProfile& mu) {
  json arr = json::array();
  for (int i = 1; i <= mu.player_count(); ++i) arr.push_back(vec_json(mu.of(i)));
  return arr;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw gnekit::GameFormatError("cannot write output file: " + path);
  out << doc.dump(2) << "\n";
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cout << "warning: " << w << "\n";
}

std::string fmt_vec(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += gnekit::format_double(v(i));
  }
  return s + ")";
}

// Shared solver knobs; every solve subcommand registers the same flags.
struct SolveFlags {
  std::string game_path;
  std::string out_path;
  double damping = 0.5;
  int max_iter = 100000;
  unsigned seed = 0;  // 0 starts at the clamped origin; otherwise a random draw
  std::string sweep = "jacobi";
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--game", f.game_path, "game description (JSON)")->required();
  cmd->add_option("--out", f.out_path, "write the result as JSON");
  cmd->add_option("--damping", f.damping, "step fraction toward the target per iteration")
      ->check(CLI::Range(1e-6, 1.0));
  cmd->add_option("--max-iter", f.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed,
                  "random start seed; 0 starts from the origin clamped into the boxes");
  cmd->add_option("--sweep", f.sweep, "player update order: jacobi or gauss-seidel")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
}

gnekit::SolveOptions to_options(const SolveFlags& f) {
  gnekit::SolveOptions opts;
  opts.damping = f.damping;
  opts.max_iter = f.max_iter;
  opts.sweep = f.sweep == "gauss-seidel" ? gnekit::SolveOptions::Sweep::kGaussSeidel
                                         : gnekit::SolveOptions::Sweep::kJacobi;
  return opts;
}

Eigen::VectorXd start_point(const gnekit::NetworkGame& game, unsigned seed) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(game.joint_dim());
  if (seed != 0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Eigen::VectorXd lo = game.joint_lo();
    const Eigen::VectorXd hi = game.joint_hi();
    for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = lo(j) + unit(rng) * (hi(j) - lo(j));
    return u;
  }
  for (int i = 1; i <= game.player_count(); ++i) {
    const int off = game.block_offset(i);
    const int d = game.block_size(i);
    u.segment(off, d) = game.box(i).clamp(u.segment(off, d));
  }
  return u;
}

// Returns false (and prints the failing checks) when a fatal validation check fails.
bool validate_or_report(const gnekit::NetworkGame& game) {
  const gnekit::ValidationReport report = gnekit::validate(game);
  for (const auto& check : report.checks) {
    if (!check.passed) {
      std::cout << (check.fatal ? "invalid: " : "warning: ") << check.name;
      if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
      std::cout << "\n";
    }
  }
  return report.ok();
}

json report_json(const char* command, const gnekit::EquilibriumReport& rep) {
  json doc;
  doc["command"] = command;
  doc["converged"] = rep.converged;
  doc["profile"] = vec_json(rep.profile.flat());
  doc["multipliers"] = multipliers_json(rep.multipliers);
  if (rep.shared_multipliers.size() > 0) {
    doc["shared_multipliers"] = vec_json(rep.shared_multipliers);
  }
  doc["active_constraints"] = rep.active_constraints;
  doc["iterations"] = rep.iterations;
  doc["fixed_point_residual"] = rep.fixed_point_residual;
  doc["worst_kkt_residual"] = rep.worst_kkt_residual;
  doc["complementarity_residual"] = rep.complementarity_residual;
  doc["certificate"] = {{"feasible", rep.certificate.feasible},
                        {"is_equilibrium", rep.certificate.is_equilibrium},
                        {"worst_gap", rep.certificate.worst_gap}};
  doc["warnings"] = rep.warnings;
  return doc;
}

// A solve succeeds when it converged; commands whose output claims to be an
// equilibrium additionally require the certificate (require_certificate).
int finish_equilibrium(const char* command, const gnekit::EquilibriumReport& rep,
                       const SolveFlags& flags, bool require_certificate = true) {
  print_warnings(rep.warnings);
  std::cout << command << ": " << (rep.converged ? "converged" : "did not converge")
            << " in " << rep.iterations << " iterations\n";
  std::cout << "profile: " << fmt_vec(rep.profile.flat()) << "\n";
  if (rep.shared_multipliers.size() > 0) {
    std::cout << "shared multipliers: " << fmt_vec(rep.shared_multipliers) << "\n";
  }
  std::cout << "equilibrium certificate: "
            << (rep.certificate.is_equilibrium ? "passes" : "FAILS") << " (worst gap "
            << rep.certificate.worst_gap << ")\n";
  if (!flags.out_path.empty()) write_json(flags.out_path, report_json(command, rep));
  const bool ok =
      rep.converged && (!require_certificate || rep.certificate.is_equilibrium);
  return ok ? kExitOk : kExitNoConverge;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and checks for locally aware constrained games on networks"};
  app.require_subcommand(1);

  SolveFlags gne_flags, ve_flags, mm_flags, dual_flags;

  auto* cmd_validate = app.add_subcommand("validate", "Check a game file for consistency");
  std::string validate_path;
  cmd_validate->add_option("--game", validate_path, "game description (JSON)")->required();

  auto* cmd_gne = app.add_subcommand("solve-gne", "Best-response fixed point");
  add_solve_flags(cmd_gne, gne_flags);

  auto* cmd_ve = app.add_subcommand("solve-ve", "Variational (shared multiplier) solution");
  add_solve_flags(cmd_ve, ve_flags);

  auto* cmd_mm =
      app.add_subcommand("solve-minimax", "Fixed point of the dual-then-minimize map");
  add_solve_flags(cmd_mm, mm_flags);

  auto* cmd_dual =
      app.add_subcommand("solve-dual", "Two-layer dual decomposition over multipliers");
  add_solve_flags(cmd_dual, dual_flags);

  auto* cmd_enum = app.add_subcommand("enumerate", "Exhaustive grid equilibrium cloud");
  std::string enum_game, enum_out;
  std::vector<double> enum_box;
  double enum_step = 0.01;
  long long enum_cap = 10000000;
  cmd_enum->add_option("--game", enum_game, "game description (JSON)")->required();
  cmd_enum->add_option("--box", enum_box, "window lo hi applied to every coordinate")
      ->expected(2)
      ->required();
  cmd_enum->add_option("--step", enum_step, "lattice spacing")->check(CLI::PositiveNumber);
  cmd_enum->add_option("--grid-cap", enum_cap, "refuse windows with more nodes than this");
  cmd_enum->add_option("--out", enum_out, "write the cloud as CSV");

  auto* cmd_mono =
      app.add_subcommand("monotonicity", "Equilibrium inclusion under a complete graph");
  std::string mono_game, mono_out;
  std::vector<double> mono_box;
  double mono_step = 0.01;
  long long mono_cap = 10000000;
  cmd_mono->add_option("--game", mono_game, "game description (JSON)")->required();
  cmd_mono->add_option("--box", mono_box, "window lo hi applied to every coordinate")
      ->expected(2)
      ->required();
  cmd_mono->add_option("--step", mono_step, "lattice spacing")->check(CLI::PositiveNumber);
  cmd_mono->add_option("--grid-cap", mono_cap, "refuse windows with more nodes than this");
  cmd_mono->add_option("--out", mono_out, "write both clouds and the verdict as JSON");

  auto* cmd_market =
      app.add_subcommand("market-duality", "Quantity/price duality on the two-firm market");
  double m_alpha = 2.0, m_beta = 1.0, m_k = 1.0, m_q = 3.0;
  bool m_strict = false;
  std::string market_out;
  cmd_market->add_option("--alpha", m_alpha, "demand intercept");
  cmd_market->add_option("--beta", m_beta, "demand slope");
  cmd_market->add_option("--k", m_k, "production cost curvature (both firms)");
  cmd_market->add_option("--q", m_q, "delivery floor (both firms)");
  cmd_market->add_flag("--strict-paper-coefficients", m_strict,
                       "use the historical dual-coefficient convention");
  cmd_market->add_option("--out", market_out, "write the duality report as JSON");

  auto* cmd_br = app.add_subcommand("br-curves", "Best response against one swept rival");
  std::string br_game, br_out;
  int br_player = 1, br_coordinate = 1;
  double br_lo = 0.0, br_hi = 1.0, br_step = 0.01;
  cmd_br->add_option("--game", br_game, "game description (JSON)")->required();
  cmd_br->add_option("--player", br_player, "responding player (1-based)")->required();
  cmd_br->add_option("--coordinate", br_coordinate, "swept joint coordinate (1-based)")
      ->required();
  cmd_br->add_option("--lo", br_lo, "sweep start")->required();
  cmd_br->add_option("--hi", br_hi, "sweep end")->required();
  cmd_br->add_option("--step", br_step, "sweep spacing")->check(CLI::PositiveNumber);
  cmd_br->add_option("--out", br_out, "CSV output path")->required();

  auto* cmd_cases = app.add_subcommand("casestudies", "Run the bundled case studies");
  std::string cases_out;
  cmd_cases->add_option("--out", cases_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (cmd_validate->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(validate_path);
      const gnekit::ValidationReport report = gnekit::validate(game);
      for (const auto& check : report.checks) {
        std::cout << (check.passed ? "  ok    " : (check.fatal ? "  FAIL  " : "  warn  "))
                  << check.name;
        if (!check.passed && !check.detail.empty()) std::cout << " (" << check.detail << ")";
        std::cout << "\n";
      }
      std::cout << (report.ok() ? "game is valid" : "game is invalid") << "\n";
      return report.ok() ? kExitOk : kExitInvalid;
    }

    if (cmd_gne->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(gne_flags.game_path);
      if (!validate_or_report(game)) return kExitInvalid;
      const auto rep =
          gnekit::solve_gne_fixed_point(game, start_point(game, gne_flags.seed),
                                        to_options(gne_flags));
      return finish_equilibrium("solve-gne", rep, gne_flags);
    }

    if (cmd_ve->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(ve_flags.game_path);
      if (!validate_or_report(game)) return kExitInvalid;
      const auto rep = gnekit::solve_ve(game, to_options(ve_flags));
      const auto verdict = gnekit::is_gne(rep.profile.flat(), game);
      std::cout << "variational point is "
                << (verdict.is_equilibrium ? "an equilibrium" : "not an equilibrium")
                << " of the game as given\n";
      // The variational point need not be an equilibrium of the game as given.
      return finish_equilibrium("solve-ve", rep, ve_flags, /*require_certificate=*/false);
    }

    if (cmd_mm->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(mm_flags.game_path);
      if (!validate_or_report(game)) return kExitInvalid;
      const auto rep = gnekit::solve_minimax_gne(game, start_point(game, mm_flags.seed),
                                                 to_options(mm_flags));
      return finish_equilibrium("solve-minimax", rep, mm_flags);
    }

    if (cmd_dual->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(dual_flags.game_path);
      if (!validate_or_report(game)) return kExitInvalid;
      gnekit::MultiplierProfile mu0 = gnekit::MultiplierProfile::zeros(game);
      if (dual_flags.seed != 0) {
        std::mt19937 rng(dual_flags.seed);
        std::uniform_real_distribution<double> unit(0.0, 2.0);
        for (int i = 1; i <= game.player_count(); ++i) {
          for (Eigen::Index k = 0; k < mu0.of(i).size(); ++k) mu0.of(i)(k) = unit(rng);
        }
      }
      const auto rep = gnekit::solve_dual_game(game, mu0, to_options(dual_flags));
      print_warnings(rep.warnings);
      std::cout << "solve-dual: " << (rep.converged ? "converged" : "did not converge")
                << " in " << rep.iterations << " outer iterations\n";
      std::cout << "profile: " << fmt_vec(rep.profile.flat()) << "\n";
      std::cout << "dual value: " << gnekit::format_double(rep.dual_value) << "\n";
      std::cout << "equilibrium certificate: "
                << (rep.certificate.is_equilibrium ? "passes" : "FAILS") << "\n";
      if (!dual_flags.out_path.empty()) {
        json doc;
        doc["command"] = "solve-dual";
        doc["converged"] = rep.converged;
        doc["profile"] = vec_json(rep.profile.flat());
        doc["multipliers"] = multipliers_json(rep.mu);
        doc["iterations"] = rep.iterations;
        doc["residual"] = rep.residual;
        doc["dual_value"] = rep.dual_value;
        doc["complementarity_residual"] = rep.complementarity_residual;
        doc["certificate"] = {{"feasible", rep.certificate.feasible},
                              {"is_equilibrium", rep.certificate.is_equilibrium},
                              {"worst_gap", rep.certificate.worst_gap}};
        doc["warnings"] = rep.warnings;
        write_json(dual_flags.out_path, doc);
      }
      return rep.converged && rep.certificate.is_equilibrium ? kExitOk : kExitNoConverge;
    }

    if (cmd_enum->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(enum_game);
      if (!validate_or_report(game)) return kExitInvalid;
      gnekit::GridSpec spec;
      spec.lo = Eigen::VectorXd::Constant(game.joint_dim(), enum_box[0]);
      spec.hi = Eigen::VectorXd::Constant(game.joint_dim(), enum_box[1]);
      spec.step = enum_step;
      const auto cloud = gnekit::enumerate_gne_grid(game, spec, enum_cap);
      std::cout << "tested " << cloud.tested << " grid nodes, " << cloud.points.size()
                << " equilibrium points (improvement tolerance " << cloud.tol_used << ")\n";
      if (!enum_out.empty()) {
        gnekit::write_points_csv(enum_out, cloud.points, game.joint_dim());
        std::cout << "cloud written to " << enum_out << "\n";
      }
      return kExitOk;
    }

    if (cmd_mono->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(mono_game);
      if (!validate_or_report(game)) return kExitInvalid;
      // Densify to the complete graph: maximal pooled awareness for every player.
      std::vector<std::pair<int, int>> extra;
      for (int i = 1; i <= game.player_count(); ++i) {
        for (int j = i + 1; j <= game.player_count(); ++j) extra.emplace_back(i, j);
      }
      gnekit::GridSpec spec;
      spec.lo = Eigen::VectorXd::Constant(game.joint_dim(), mono_box[0]);
      spec.hi = Eigen::VectorXd::Constant(game.joint_dim(), mono_box[1]);
      spec.step = mono_step;
      const auto rep = gnekit::check_monotonicity(game, extra, spec, mono_cap);
      std::cout << "sparse cloud: " << rep.sparse.points.size()
                << " points, dense cloud: " << rep.dense.points.size() << " points\n";
      std::cout << "inclusion (every sparse point survives densification): "
                << (rep.inclusion_holds ? "holds" : "VIOLATED") << "\n";
      for (const auto& v : rep.violations) std::cout << "  missing: " << fmt_vec(v) << "\n";
      if (!mono_out.empty()) {
        json doc;
        doc["command"] = "monotonicity";
        doc["inclusion_holds"] = rep.inclusion_holds;
        doc["sparse_points"] = json::array();
        for (const auto& p : rep.sparse.points) doc["sparse_points"].push_back(vec_json(p));
        doc["dense_points"] = json::array();
        for (const auto& p : rep.dense.points) doc["dense_points"].push_back(vec_json(p));
        doc["violations"] = json::array();
        for (const auto& p : rep.violations) doc["violations"].push_back(vec_json(p));
        write_json(mono_out, doc);
      }
      return rep.inclusion_holds ? kExitOk : kExitNoConverge;
    }

    if (cmd_market->parsed()) {
      gnekit::CournotParams params;
      params.alpha = m_alpha;
      params.beta = m_beta;
      params.k1 = params.k2 = m_k;
      params.q1 = params.q2 = m_q;
      const auto convention = m_strict ? gnekit::CoefficientConvention::kAsPublished
                                       : gnekit::CoefficientConvention::kDerived;
      const auto rep = gnekit::check_cg_bg_duality(params, convention);
      print_warnings(rep.warnings);
      std::cout << "quantities: " << fmt_vec(rep.cournot_quantities) << "\n";
      std::cout << "delivery multipliers: " << fmt_vec(rep.cournot_multipliers) << "\n";
      std::cout << "dual-game strategies: " << fmt_vec(rep.dcg_multipliers) << "\n";
      std::cout << "matched prices: " << fmt_vec(rep.bertrand_prices) << "\n";
      std::cout << "largest pairwise gap: " << rep.max_multiplier_gap << "\n";
      std::cout << "duality " << (rep.ok ? "holds" : "FAILS") << "\n";
      if (!market_out.empty()) {
        json doc;
        doc["command"] = "market-duality";
        doc["ok"] = rep.ok;
        doc["converged"] = rep.converged;
        doc["cournot_quantities"] = vec_json(rep.cournot_quantities);
        doc["cournot_multipliers"] = vec_json(rep.cournot_multipliers);
        doc["dcg_multipliers"] = vec_json(rep.dcg_multipliers);
        doc["bertrand_prices"] = vec_json(rep.bertrand_prices);
        doc["max_multiplier_gap"] = rep.max_multiplier_gap;
        doc["max_match_residual"] = rep.max_match_residual;
        doc["v_crosscheck_gap"] = rep.v_crosscheck_gap;
        doc["matched_demand"] = {{"delta", rep.match.params.delta},
                                 {"eta", rep.match.params.eta},
                                 {"c1", rep.match.params.c1},
                                 {"c2", rep.match.params.c2}};
        doc["warnings"] = rep.warnings;
        write_json(market_out, doc);
      }
      return rep.ok ? kExitOk : kExitNoConverge;
    }

    if (cmd_br->parsed()) {
      const gnekit::NetworkGame game = gnekit::load_game(br_game);
      if (!validate_or_report(game)) return kExitInvalid;
      gnekit::SweepSpec sweep;
      sweep.coordinate = br_coordinate;
      sweep.lo = br_lo;
      sweep.hi = br_hi;
      sweep.step = br_step;
      gnekit::export_br_curves(game, br_player, sweep, br_out);
      std::cout << "best-response curve written to " << br_out << "\n";
      return kExitOk;
    }

    if (cmd_cases->parsed()) {
      gnekit::run_casestudies(cases_out);
      std::cout << "case study outputs written to " << cases_out << "\n";
      return kExitOk;
    }
  } catch (const gnekit::GridCapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const gnekit::GameFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConverge;
  }

  return kExitOk;
}
