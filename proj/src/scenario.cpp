#include "nashdelta/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace nashdelta {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ScenarioError(message);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* k) { return item.key() == k; });
    if (!known) {
      fail("unknown key \"" + path + item.key() + "\"");
    }
  }
}

double require_number(const json& obj, const std::string& path,
                      const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    fail("\"" + path + key + "\" must be a number");
  }
  return obj[key].get<double>();
}

DeltaDistribution parse_delta(const json& node, const std::string& path) {
  DeltaDistribution dist;
  if (node.is_number()) {
    dist = DeltaDistribution::point(node.get<double>());
    const std::string issue = validate_distribution(dist);
    if (!issue.empty()) {
      fail("\"" + path + "\": " + issue);
    }
    return dist;
  }
  if (!node.is_object()) {
    fail("\"" + path + "\" must be a number or a distribution object");
  }
  if (!node.contains("kind") || !node["kind"].is_string()) {
    fail("\"" + path + ".kind\" must name a distribution");
  }
  const std::string kind = node["kind"].get<std::string>();
  const std::string prefix = path + ".";
  if (kind == "point") {
    check_keys(node, prefix, {"kind", "value"});
    dist = DeltaDistribution::point(require_number(node, prefix, "value"));
  } else if (kind == "uniform") {
    check_keys(node, prefix, {"kind", "a", "b"});
    dist = DeltaDistribution::uniform(require_number(node, prefix, "a"),
                                      require_number(node, prefix, "b"));
  } else if (kind == "truncated_gaussian") {
    check_keys(node, prefix, {"kind", "mu", "sigma"});
    dist = DeltaDistribution::truncated_gaussian(
        require_number(node, prefix, "mu"),
        require_number(node, prefix, "sigma"));
  } else if (kind == "beta") {
    check_keys(node, prefix, {"kind", "alpha", "beta"});
    dist = DeltaDistribution::beta(require_number(node, prefix, "alpha"),
                                   require_number(node, prefix, "beta"));
  } else {
    fail("\"" + path + ".kind\": unknown distribution \"" + kind + "\"");
  }
  const std::string issue = validate_distribution(dist);
  if (!issue.empty()) {
    fail("\"" + path + "\": " + issue);
  }
  return dist;
}

ValueExpr parse_expr_field(const json& obj, const std::string& path,
                           const char* key) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    fail("\"" + path + key + "\" must be an expression string");
  }
  const std::string text = obj[key].get<std::string>();
  try {
    return ValueExpr::parse(text);
  } catch (const ParseError& e) {
    fail("\"" + path + key + "\": " + e.what());
  }
}

Vec2 parse_pair(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number()) {
    fail("\"" + path + "\" must be an array of two numbers");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + end, '\n'));
}

}  // namespace

GameSpec Scenario::to_game() const {
  if (!deterministic()) {
    throw ScenarioError(
        "scenario draws its rationality indices from distributions; this "
        "command needs fixed values");
  }
  return game.instantiate(delta1.a, delta2.a);
}

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << origin << ": line " << line_of_offset(text, e.byte)
        << ": " << e.what();
    throw ScenarioError(msg.str());
  }
  if (!root.is_object()) {
    fail(origin + ": top level must be an object");
  }

  check_keys(root, "",
             {"budget", "constraints", "player1", "player2", "disagreement",
              "solver"});

  Scenario scenario;

  const bool has_budget = root.contains("budget");
  const bool has_constraints = root.contains("constraints");
  if (has_budget == has_constraints) {
    fail("exactly one of \"budget\" and \"constraints\" is required");
  }
  if (has_budget) {
    if (!root["budget"].is_number()) fail("\"budget\" must be a number");
    scenario.game.outcome_space =
        FeasiblePolygon::budget(root["budget"].get<double>());
  } else {
    if (!root["constraints"].is_array() || root["constraints"].empty()) {
      fail("\"constraints\" must be a non-empty array");
    }
    std::vector<LinearConstraint> cs;
    std::size_t index = 0;
    for (const json& c : root["constraints"]) {
      std::ostringstream path;
      path << "constraints[" << index << "].";
      if (!c.is_object()) fail("\"" + path.str() + "\" must be an object");
      check_keys(c, path.str(), {"a1", "a2", "b"});
      cs.push_back({require_number(c, path.str(), "a1"),
                    require_number(c, path.str(), "a2"),
                    require_number(c, path.str(), "b")});
      ++index;
    }
    scenario.game.outcome_space = FeasiblePolygon(std::move(cs));
  }

  const auto parse_player = [&](const char* key, PlayerTemplate& out,
                                DeltaDistribution& delta) {
    if (!root.contains(key) || !root[key].is_object()) {
      fail(std::string("\"") + key + "\" must be an object");
    }
    const json& p = root[key];
    const std::string prefix = std::string(key) + ".";
    check_keys(p, prefix, {"utility", "distortion", "delta"});
    out.rational_value = parse_expr_field(p, prefix, "utility");
    out.distortion_value = parse_expr_field(p, prefix, "distortion");
    if (!p.contains("delta")) {
      fail("\"" + prefix + "delta\" is required");
    }
    delta = parse_delta(p["delta"], prefix + "delta");
  };
  parse_player("player1", scenario.game.player1, scenario.delta1);
  parse_player("player2", scenario.game.player2, scenario.delta2);

  if (root.contains("disagreement")) {
    const json& d = root["disagreement"];
    if (!d.is_object()) fail("\"disagreement\" must be an object");
    check_keys(d, "disagreement.", {"payoffs", "threats"});
    const bool has_payoffs = d.contains("payoffs");
    const bool has_threats = d.contains("threats");
    if (has_payoffs == has_threats) {
      fail("\"disagreement\" needs exactly one of \"payoffs\" and "
           "\"threats\"");
    }
    if (has_payoffs) {
      const Vec2 v = parse_pair(d["payoffs"], "disagreement.payoffs");
      scenario.game.disagreement = Disagreement::payoffs(v.x, v.y);
    } else {
      const Vec2 v = parse_pair(d["threats"], "disagreement.threats");
      scenario.game.disagreement = Disagreement::threats(v.x, v.y);
    }
  }

  if (root.contains("solver")) {
    const json& s = root["solver"];
    if (!s.is_object()) fail("\"solver\" must be an object");
    check_keys(s, "solver.",
               {"grid_resolution", "refinement_tolerance",
                "max_refinement_steps", "affine_fast_path"});
    if (s.contains("grid_resolution")) {
      if (!s["grid_resolution"].is_number_integer()) {
        fail("\"solver.grid_resolution\" must be an integer");
      }
      scenario.options.grid_resolution = s["grid_resolution"].get<int>();
      if (scenario.options.grid_resolution < 16) {
        fail("\"solver.grid_resolution\" must be at least 16");
      }
    }
    if (s.contains("refinement_tolerance")) {
      scenario.options.refinement_tolerance =
          require_number(s, "solver.", "refinement_tolerance");
      if (!(scenario.options.refinement_tolerance > 0.0)) {
        fail("\"solver.refinement_tolerance\" must be positive");
      }
    }
    if (s.contains("max_refinement_steps")) {
      if (!s["max_refinement_steps"].is_number_integer()) {
        fail("\"solver.max_refinement_steps\" must be an integer");
      }
      scenario.options.max_refinement_steps =
          s["max_refinement_steps"].get<int>();
      if (scenario.options.max_refinement_steps < 1) {
        fail("\"solver.max_refinement_steps\" must be at least 1");
      }
    }
    if (s.contains("affine_fast_path")) {
      if (!s["affine_fast_path"].is_boolean()) {
        fail("\"solver.affine_fast_path\" must be a boolean");
      }
      scenario.options.affine_fast_path = s["affine_fast_path"].get<bool>();
    }
  }

  // Surface game-level problems at load time. Distribution parameters were
  // validated above, so probing at a midpoint index exercises everything
  // else (polygon shape, threat containment, expressions).
  const auto issues = validate_game(scenario.game.instantiate(0.5, 0.5));
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << origin << ": invalid game:";
    for (const auto& issue : issues) {
      msg << " [" << issue.code << "] " << issue.detail << ";";
    }
    fail(msg.str());
  }

  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail("cannot open scenario file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path);
}

}  // namespace nashdelta
