#include "gnekit/casestudies.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gnekit/gne.hpp"
#include "gnekit/io.hpp"

namespace gnekit {

namespace {

using nlohmann::json;

AwarenessLevel variant_awareness(char variant, int player) {
  switch (variant) {
    case 'a':
      return player == 1 ? AwarenessLevel({1}) : AwarenessLevel({2});
    case 'b':
      return player == 1 ? AwarenessLevel({1, 2}) : AwarenessLevel({2});
    case 'c':
      return player == 1 ? AwarenessLevel({1}) : AwarenessLevel({1, 2});
    case 'd':
      return AwarenessLevel({1, 2});
    default:
      throw std::invalid_argument("variant must be one of 'a', 'b', 'c', 'd'");
  }
}

json vec_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json cloud_and_save(const NetworkGame& game, const GridSpec& spec,
                    const std::filesystem::path& csv_path) {
  EquilibriumSet cloud = enumerate_gne_grid(game, spec);
  write_points_csv(csv_path.string(), cloud.points, game.joint_dim());
  json j;
  j["points"] = static_cast<int>(cloud.points.size());
  j["tested"] = cloud.tested;
  j["step"] = spec.step;
  j["file"] = csv_path.filename().string();
  return j;
}

}  // namespace

NetworkGame build_counterexample() {
  std::vector<QuadraticCost> costs(2);
  costs[0].owner = 1;
  costs[0].Q = (Eigen::MatrixXd(2, 2) << 1, 0, 0, 0).finished();
  costs[0].q = Eigen::Vector2d(-1.0, 0.0);
  costs[1].owner = 2;
  costs[1].Q = (Eigen::MatrixXd(2, 2) << 0, 0, 0, 1).finished();
  costs[1].q = Eigen::Vector2d(0.0, -2.0);

  AffineConstraint budget;
  budget.index = 1;
  budget.a = Eigen::Vector2d(1.0, 1.0);
  budget.b = 1.0;

  std::vector<Box> boxes(2, Box::uniform(1, -100.0, 100.0));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), {budget},
                     {AwarenessLevel({1}), AwarenessLevel{}}, std::move(boxes));
}

NetworkGame build_lq_nonunique(char variant) {
  std::vector<QuadraticCost> costs(2);
  for (int i = 0; i < 2; ++i) {
    costs[static_cast<size_t>(i)].owner = i + 1;
    costs[static_cast<size_t>(i)].Q = 2.0 * Eigen::MatrixXd::Identity(2, 2);
    costs[static_cast<size_t>(i)].q = Eigen::Vector2d::Zero();
  }

  std::vector<AffineConstraint> cons(2);
  cons[0].index = 1;
  cons[0].a = Eigen::Vector2d(1.0, 1.0);
  cons[0].b = 3.0;
  cons[1].index = 2;
  cons[1].a = Eigen::Vector2d(2.0, 1.0);
  cons[1].b = -5.0;

  std::vector<Box> boxes(2, Box::uniform(1, -100.0, 100.0));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                     {variant_awareness(variant, 1), variant_awareness(variant, 2)},
                     std::move(boxes));
}

NetworkGame build_energy(char variant) {
  std::vector<QuadraticCost> costs(2);
  for (int i = 0; i < 2; ++i) {
    costs[static_cast<size_t>(i)].owner = i + 1;
    costs[static_cast<size_t>(i)].Q = Eigen::MatrixXd::Zero(2, 2);
    costs[static_cast<size_t>(i)].Q(i, i) = 2.0;
    costs[static_cast<size_t>(i)].q = Eigen::Vector2d::Zero();
  }

  std::vector<AffineConstraint> cons(2);
  cons[0].index = 1;  // capacity: u1 + u2 <= 2
  cons[0].a = Eigen::Vector2d(1.0, 1.0);
  cons[0].b = 2.0;
  cons[1].index = 2;  // demand: u1 + u2 >= 1
  cons[1].a = Eigen::Vector2d(-1.0, -1.0);
  cons[1].b = -1.0;

  std::vector<Box> boxes(2, Box::uniform(1, 0.0, 10.0));
  return NetworkGame(NetworkGraph(2, {}), {1, 1}, std::move(costs), std::move(cons),
                     {variant_awareness(variant, 1), variant_awareness(variant, 2)},
                     std::move(boxes));
}

CournotParams pinned_market() { return CournotParams{2.0, 1.0, 1.0, 1.0, 3.0, 3.0}; }

void run_casestudies(const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  json summary;

  {
    const NetworkGame game = build_counterexample();
    save_game(game, (dir / "counterexample.json").string());

    SolveOptions opts;
    EquilibriumReport gne = solve_gne_fixed_point(game, Eigen::Vector2d::Zero(), opts);
    EquilibriumReport ve = solve_ve(game, opts);

    json j;
    j["gne"] = vec_json(gne.profile.flat());
    j["gne_converged"] = gne.converged;
    j["gne_certified"] = gne.certificate.is_equilibrium;
    j["ve"] = vec_json(ve.profile.flat());
    j["ve_converged"] = ve.converged;
    j["ve_is_gne_as_given"] = is_gne(ve.profile.flat(), game).is_equilibrium;
    j["ve_is_gne_globally_aware"] =
        is_gne(ve.profile.flat(), game.to_globally_aware()).is_equilibrium;

    GridSpec spec;
    spec.lo = Eigen::Vector2d(-2.0, 0.5);
    spec.hi = Eigen::Vector2d(0.5, 3.0);
    spec.step = 0.05;
    j["cloud"] = cloud_and_save(game, spec, dir / "counterexample_cloud.csv");

    SweepSpec sweep;
    sweep.coordinate = 2;
    sweep.lo = 0.0;
    sweep.hi = 3.0;
    sweep.step = 0.05;
    export_br_curves(game, 1, sweep, (dir / "counterexample_br_player1.csv").string());
    j["br_curve"] = "counterexample_br_player1.csv";

    summary["counterexample"] = std::move(j);
  }

  for (char variant : {'a', 'b', 'c', 'd'}) {
    const std::string tag(1, variant);
    const NetworkGame game = build_lq_nonunique(variant);
    save_game(game, (dir / ("lq_" + tag + ".json")).string());

    SolveOptions opts;
    EquilibriumReport ve = solve_ve(game, opts);

    json j;
    j["ve"] = vec_json(ve.profile.flat());
    j["ve_converged"] = ve.converged;
    j["ve_is_gne"] = is_gne(ve.profile.flat(), game).is_equilibrium;

    GridSpec spec;
    spec.lo = Eigen::Vector2d(-3.0, -5.5);
    spec.hi = Eigen::Vector2d(0.5, 0.5);
    spec.step = 0.05;
    j["cloud"] = cloud_and_save(game, spec, dir / ("lq_" + tag + "_cloud.csv"));

    summary["lq"][tag] = std::move(j);
  }

  for (char variant : {'a', 'b', 'c', 'd'}) {
    const std::string tag(1, variant);
    const NetworkGame game = build_energy(variant);
    save_game(game, (dir / ("energy_" + tag + ".json")).string());

    SolveOptions opts;
    EquilibriumReport ve = solve_ve(game, opts);
    EquilibriumReport gne =
        solve_gne_fixed_point(game, Eigen::Vector2d(0.5, 0.5), opts);

    json j;
    j["ve"] = vec_json(ve.profile.flat());
    j["ve_converged"] = ve.converged;
    j["ve_is_gne"] = is_gne(ve.profile.flat(), game).is_equilibrium;
    j["gne_from_center"] = vec_json(gne.profile.flat());
    j["gne_converged"] = gne.converged;

    GridSpec spec;
    spec.lo = Eigen::Vector2d(0.0, 0.0);
    spec.hi = Eigen::Vector2d(2.0, 2.0);
    spec.step = 0.05;
    j["cloud"] = cloud_and_save(game, spec, dir / ("energy_" + tag + "_cloud.csv"));

    summary["energy"][tag] = std::move(j);
  }

  {
    DualityReport rep = check_cg_bg_duality(pinned_market());
    json j;
    j["ok"] = rep.ok;
    j["converged"] = rep.converged;
    j["cournot_quantities"] = vec_json(rep.cournot_quantities);
    j["cournot_multipliers"] = vec_json(rep.cournot_multipliers);
    j["dcg_multipliers"] = vec_json(rep.dcg_multipliers);
    j["bertrand_prices"] = vec_json(rep.bertrand_prices);
    j["max_multiplier_gap"] = rep.max_multiplier_gap;
    j["max_match_residual"] = rep.max_match_residual;
    j["v_crosscheck_gap"] = rep.v_crosscheck_gap;
    j["matched_demand"] = {{"delta", rep.match.params.delta},
                           {"eta", rep.match.params.eta},
                           {"c1", rep.match.params.c1},
                           {"c2", rep.match.params.c2}};
    summary["market"] = std::move(j);

    save_game(build_cournot(pinned_market()), (dir / "market_cournot.json").string());
  }

  std::ofstream out(dir / "summary.json");
  if (!out) throw GameFormatError("cannot write summary file in " + out_dir);
  out << summary.dump(2) << "\n";
}

}  // namespace gnekit
