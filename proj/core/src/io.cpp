#include "gnekit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "gnekit/kernel.hpp"

namespace gnekit {

namespace {

using nlohmann::json;

Eigen::VectorXd to_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw GameFormatError(what + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index idx = 0;
  for (const auto& e : j) {
    if (!e.is_number()) throw GameFormatError(what + " must contain only numbers");
    v(idx++) = e.get<double>();
  }
  return v;
}

}  // namespace

NetworkGame parse_game_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw GameFormatError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw GameFormatError("top level must be an object");
  if (!doc.contains("players") || !doc["players"].is_array() || doc["players"].empty()) {
    throw GameFormatError("`players` must be a non-empty array");
  }

  const json& jplayers = doc["players"];
  const int N = static_cast<int>(jplayers.size());

  std::vector<int> block_sizes;
  std::vector<Box> boxes;
  int joint = 0;
  for (int i = 0; i < N; ++i) {
    const json& jp = jplayers[static_cast<size_t>(i)];
    if (!jp.is_object() || !jp.contains("box_lo") || !jp.contains("box_hi")) {
      throw GameFormatError("each player needs `box_lo` and `box_hi`");
    }
    Box box;
    box.lo = to_vector(jp["box_lo"], "box_lo");
    box.hi = to_vector(jp["box_hi"], "box_hi");
    if (box.lo.size() == 0 || box.lo.size() != box.hi.size()) {
      throw GameFormatError("box_lo and box_hi must be non-empty and equally sized");
    }
    block_sizes.push_back(static_cast<int>(box.lo.size()));
    joint += block_sizes.back();
    boxes.push_back(std::move(box));
  }

  std::vector<QuadraticCost> costs;
  for (int i = 0; i < N; ++i) {
    const json& jp = jplayers[static_cast<size_t>(i)];
    if (!jp.contains("Q") || !jp.contains("q")) {
      throw GameFormatError("each player needs `Q` (row-major) and `q`");
    }
    const Eigen::VectorXd flatQ = to_vector(jp["Q"], "Q");
    if (flatQ.size() != static_cast<Eigen::Index>(joint) * joint) {
      std::ostringstream msg;
      msg << "player " << (i + 1) << ": Q must have " << joint * joint
          << " row-major entries for joint dimension " << joint;
      throw GameFormatError(msg.str());
    }
    QuadraticCost cost;
    cost.owner = i + 1;
    cost.Q = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                            Eigen::RowMajor>>(flatQ.data(), joint, joint);
    cost.q = to_vector(jp["q"], "q");
    if (cost.q.size() != joint) {
      throw GameFormatError("q must match the joint dimension");
    }
    cost.c = jp.value("c", 0.0);
    costs.push_back(std::move(cost));
  }

  std::vector<AffineConstraint> cons;
  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array()) throw GameFormatError("`constraints` must be an array");
    int m = 0;
    for (const auto& jc : doc["constraints"]) {
      if (!jc.is_object() || !jc.contains("a") || !jc.contains("b")) {
        throw GameFormatError("each constraint needs `a` and `b`");
      }
      AffineConstraint con;
      con.index = ++m;
      con.a = to_vector(jc["a"], "a");
      if (con.a.size() != joint) {
        throw GameFormatError("constraint row `a` must match the joint dimension");
      }
      if (!jc["b"].is_number()) throw GameFormatError("constraint `b` must be a number");
      con.b = jc["b"].get<double>();
      cons.push_back(std::move(con));
    }
  }
  const int M = static_cast<int>(cons.size());

  std::vector<std::pair<int, int>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw GameFormatError("`edges` must be an array of pairs");
    for (const auto& je : doc["edges"]) {
      if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
          !je[1].is_number_integer()) {
        throw GameFormatError("each edge must be a pair of 1-based player indices");
      }
      const int a = je[0].get<int>();
      const int b = je[1].get<int>();
      if (a < 1 || a > N || b < 1 || b > N || a == b) {
        throw GameFormatError("edge endpoints must be distinct players in 1..N");
      }
      edges.emplace_back(a, b);
    }
  }

  std::vector<AwarenessLevel> awareness;
  if (doc.contains("awareness")) {
    if (!doc["awareness"].is_array() ||
        doc["awareness"].size() != static_cast<size_t>(N)) {
      throw GameFormatError("`awareness` must list one index set per player");
    }
    for (const auto& ja : doc["awareness"]) {
      if (!ja.is_array()) throw GameFormatError("awareness entries must be arrays");
      std::vector<int> members;
      for (const auto& jm : ja) {
        if (!jm.is_number_integer()) {
          throw GameFormatError("awareness entries must hold integer constraint indices");
        }
        const int m = jm.get<int>();
        if (m < 1 || m > M) {
          throw GameFormatError("awareness index out of range of the constraint list");
        }
        members.push_back(m);
      }
      awareness.emplace_back(std::move(members));
    }
  } else {
    awareness.assign(static_cast<size_t>(N), AwarenessLevel::full(M));
  }

  try {
    return NetworkGame(NetworkGraph(N, std::move(edges)), std::move(block_sizes),
                       std::move(costs), std::move(cons), std::move(awareness),
                       std::move(boxes));
  } catch (const std::invalid_argument& err) {
    throw GameFormatError(err.what());
  }
}

NetworkGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameFormatError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_json(buf.str());
}

std::string game_to_json(const NetworkGame& game) {
  json doc;
  doc["players"] = json::array();
  const int n = game.joint_dim();
  for (int i = 1; i <= game.player_count(); ++i) {
    json jp;
    const Box& box = game.box(i);
    jp["box_lo"] = std::vector<double>(box.lo.data(), box.lo.data() + box.lo.size());
    jp["box_hi"] = std::vector<double>(box.hi.data(), box.hi.data() + box.hi.size());
    const QuadraticCost& cost = game.cost(i);
    std::vector<double> flatQ;
    flatQ.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) flatQ.push_back(cost.Q(r, c));
    jp["Q"] = flatQ;
    jp["q"] = std::vector<double>(cost.q.data(), cost.q.data() + cost.q.size());
    jp["c"] = cost.c;
    doc["players"].push_back(std::move(jp));
  }
  doc["constraints"] = json::array();
  for (int m = 1; m <= game.constraint_count(); ++m) {
    const AffineConstraint& con = game.constraint(m);
    json jc;
    jc["a"] = std::vector<double>(con.a.data(), con.a.data() + con.a.size());
    jc["b"] = con.b;
    doc["constraints"].push_back(std::move(jc));
  }
  doc["edges"] = json::array();
  for (const auto& [a, b] : game.graph().edges()) {
    doc["edges"].push_back(json::array({a, b}));
  }
  doc["awareness"] = json::array();
  for (int i = 1; i <= game.player_count(); ++i) {
    doc["awareness"].push_back(game.awareness(i).members());
  }
  return doc.dump(2);
}

void save_game(const NetworkGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameFormatError("cannot write game file: " + path);
  out << game_to_json(game) << "\n";
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_points_csv(const std::string& path, const std::vector<Eigen::VectorXd>& points,
                      int dim) {
  std::ofstream out(path);
  if (!out) throw GameFormatError("cannot write CSV file: " + path);
  for (int j = 1; j <= dim; ++j) out << (j > 1 ? "," : "") << "u_" << j;
  out << "\n";
  for (const Eigen::VectorXd& p : points) {
    for (int j = 0; j < dim; ++j) out << (j > 0 ? "," : "") << format_double(p(j));
    out << "\n";
  }
}

void export_br_curves(const NetworkGame& game, int player, const SweepSpec& sweep,
                      const std::string& out_path) {
  if (player < 1 || player > game.player_count()) {
    throw std::invalid_argument("export_br_curves: player index out of range");
  }
  const int n = game.joint_dim();
  if (sweep.coordinate < 1 || sweep.coordinate > n) {
    throw std::invalid_argument("export_br_curves: sweep coordinate out of range");
  }
  const int off = game.block_offset(player);
  const int d = game.block_size(player);
  const int coord = sweep.coordinate - 1;
  if (coord >= off && coord < off + d) {
    throw std::invalid_argument(
        "export_br_curves: the swept coordinate belongs to the responding player");
  }
  if (!(sweep.step > 0.0) || !(sweep.hi >= sweep.lo)) {
    throw std::invalid_argument("export_br_curves: sweep needs step > 0 and hi >= lo");
  }

  Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
  for (int i = 1; i <= game.player_count(); ++i) {
    const int o = game.block_offset(i);
    const int s = game.block_size(i);
    base.segment(o, s) = game.box(i).clamp(base.segment(o, s));
  }

  std::ofstream out(out_path);
  if (!out) throw GameFormatError("cannot write CSV file: " + out_path);
  out << "sweep";
  for (int j = 1; j <= d; ++j) out << ",br_" << j;
  out << ",feasible\n";

  const long long samples =
      static_cast<long long>(std::floor((sweep.hi - sweep.lo) / sweep.step + 1e-9)) + 1;
  for (long long s = 0; s < samples; ++s) {
    const double t = sweep.lo + static_cast<double>(s) * sweep.step;
    Eigen::VectorXd u = base;
    u(coord) = t;
    BestResponseResult br = best_response(player, u, game);
    out << format_double(t);
    if (br.status == BestResponseResult::Status::kSolved) {
      for (int j = 0; j < d; ++j) out << "," << format_double(br.minimizer(j));
      out << ",1\n";
    } else {
      for (int j = 0; j < d; ++j) out << ",nan";
      out << ",0\n";
    }
  }
}

}  // namespace gnekit
