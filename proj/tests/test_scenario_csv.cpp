#include <doctest.h>

#include <optional>
#include <string>

#include "nashdelta/csv.hpp"
#include "nashdelta/scenario.hpp"

using namespace nashdelta;

namespace {

std::string scenario_dir() { return NASHDELTA_SCENARIO_DIR; }

// Runs the callable and returns the ScenarioError message, or the empty
// string when nothing was thrown.
template <typename Fn>
std::string scenario_error_of(Fn&& fn) {
  try {
    fn();
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kCanonicalMixed = R"({
  "budget": 100,
  "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 0.25 },
  "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 0.75 }
})";

}  // namespace

TEST_CASE("scenario text parses into a solvable deterministic game") {
  const Scenario sc = parse_scenario_text(kCanonicalMixed);
  CHECK(sc.deterministic());
  CHECK(sc.delta1.a == 0.25);
  CHECK(sc.delta2.a == 0.75);
  CHECK(sc.options.grid_resolution == 400);
  CHECK(sc.options.affine_fast_path);

  const GameSpec game = sc.to_game();
  const Solution sol = solve(game, sc.options);
  const Solution expect = closed_form_example(0.25, 0.75);
  CHECK(sol.p_star.x == doctest::Approx(expect.p_star.x).epsilon(1e-9));
  CHECK(sol.p_star.y == doctest::Approx(expect.p_star.y).epsilon(1e-9));
}

TEST_CASE("scenario accepts distribution objects for the indices") {
  const Scenario sc = parse_scenario_text(R"({
    "budget": 100,
    "player1": { "utility": "s1", "distortion": "s1 - s2",
                 "delta": { "kind": "point", "value": 1 } },
    "player2": { "utility": "s2", "distortion": "s2 - s1",
                 "delta": { "kind": "uniform", "a": 0.2, "b": 0.6 } }
  })");
  CHECK(sc.delta1.kind == DeltaDistribution::Kind::point);
  CHECK(sc.delta2.kind == DeltaDistribution::Kind::uniform);
  CHECK(sc.delta2.a == 0.2);
  CHECK(sc.delta2.b == 0.6);
  CHECK_FALSE(sc.deterministic());
  CHECK_THROWS_AS(sc.to_game(), ScenarioError);
}

TEST_CASE("scenario rejects unknown keys by full path") {
  const std::string top = scenario_error_of([] {
    parse_scenario_text(R"({"badget": 100})");
  });
  CHECK(contains(top, "unknown key \"badget\""));

  const std::string nested = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1,
                   "gamma": 2 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(nested, "player1.gamma"));

  const std::string in_constraint = scenario_error_of([] {
    parse_scenario_text(R"({
      "constraints": [ { "a1": 1, "a2": 1, "b": 100, "c": 5 } ],
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(in_constraint, "constraints[0].c"));
}

TEST_CASE("scenario requires exactly one outcome space description") {
  const std::string both = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "constraints": [ { "a1": 1, "a2": 1, "b": 100 } ],
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(both, "exactly one"));

  const std::string neither = scenario_error_of([] {
    parse_scenario_text(R"({
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(neither, "exactly one"));
}

TEST_CASE("scenario validates index ranges in both spellings") {
  const std::string number_form = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1.5 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(number_form, "player1.delta"));

  const std::string object_form = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1",
                   "delta": { "kind": "uniform", "a": 0.9, "b": 0.1 } }
    })");
  });
  CHECK(contains(object_form, "player2.delta"));

  const std::string bad_kind = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2",
                   "delta": { "kind": "poisson", "value": 1 } },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(bad_kind, "unknown distribution \"poisson\""));
}

TEST_CASE("scenario reports the line of malformed json") {
  const std::string msg = scenario_error_of([] {
    parse_scenario_text("{\n  \"budget\": 100,\n  oops\n}", "bad.scn");
  });
  CHECK(contains(msg, "bad.scn"));
  CHECK(contains(msg, "line 3"));
}

TEST_CASE("scenario surfaces expression errors with their path") {
  const std::string msg = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1 +", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(msg, "player1.utility"));
}

TEST_CASE("scenario applies and validates solver overrides") {
  const Scenario sc = parse_scenario_text(R"({
    "budget": 100,
    "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
    "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
    "solver": { "grid_resolution": 64, "refinement_tolerance": 1e-7,
                "max_refinement_steps": 5, "affine_fast_path": false }
  })");
  CHECK(sc.options.grid_resolution == 64);
  CHECK(sc.options.refinement_tolerance == 1e-7);
  CHECK(sc.options.max_refinement_steps == 5);
  CHECK_FALSE(sc.options.affine_fast_path);

  const auto with_solver = [](const std::string& solver) {
    return parse_scenario_text(std::string(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
      "solver": )") + solver + "\n}");
  };
  CHECK(contains(scenario_error_of([&] { with_solver("{ \"grid_resolution\": 8 }"); }),
                 "at least 16"));
  CHECK(contains(
      scenario_error_of([&] { with_solver("{ \"grid_resolution\": 32.5 }"); }),
      "integer"));
  CHECK(contains(
      scenario_error_of([&] { with_solver("{ \"max_refinement_steps\": 0 }"); }),
      "at least 1"));
  CHECK(contains(
      scenario_error_of([&] { with_solver("{ \"refinement_tolerance\": 0 }"); }),
      "positive"));
  CHECK(contains(
      scenario_error_of([&] { with_solver("{ \"affine_fast_path\": \"yes\" }"); }),
      "boolean"));
}

TEST_CASE("scenario parses both disagreement spellings") {
  const Scenario pay = parse_scenario_text(R"({
    "budget": 100,
    "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
    "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
    "disagreement": { "payoffs": [5, 10] }
  })");
  CHECK(pay.game.disagreement.kind == Disagreement::Kind::payoffs);
  CHECK(pay.game.disagreement.value.x == 5.0);
  CHECK(pay.game.disagreement.value.y == 10.0);

  const Scenario threat = parse_scenario_text(R"({
    "budget": 100,
    "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
    "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
    "disagreement": { "threats": [20, 30] }
  })");
  CHECK(threat.game.disagreement.kind == Disagreement::Kind::threats);

  const std::string both = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
      "disagreement": { "payoffs": [0, 0], "threats": [20, 30] }
    })");
  });
  CHECK(contains(both, "exactly one"));

  const std::string short_pair = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
      "disagreement": { "payoffs": [1] }
    })");
  });
  CHECK(contains(short_pair, "two numbers"));
}

TEST_CASE("scenario runs game validation at load time") {
  const std::string empty_region = scenario_error_of([] {
    parse_scenario_text(R"({
      "constraints": [ { "a1": 1, "a2": 0, "b": -1 },
                       { "a1": -1, "a2": 0, "b": 0 } ],
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 }
    })");
  });
  CHECK(contains(empty_region, "invalid game"));
  CHECK(contains(empty_region, "polygon_empty"));

  const std::string far_threat = scenario_error_of([] {
    parse_scenario_text(R"({
      "budget": 100,
      "player1": { "utility": "s1", "distortion": "s1 - s2", "delta": 1 },
      "player2": { "utility": "s2", "distortion": "s2 - s1", "delta": 1 },
      "disagreement": { "threats": [80, 80] }
    })");
  });
  CHECK(contains(far_threat, "threat_outside_outcome_space"));
}

TEST_CASE("bundled scenarios load and describe the canonical games") {
  const Scenario base = load_scenario(scenario_dir() + "/split100.scn");
  CHECK(base.deterministic());
  CHECK(base.delta1.a == 1.0);
  CHECK(base.delta2.a == 1.0);
  const Solution sol = solve(base.to_game(), base.options);
  CHECK(sol.s_star->x == doctest::Approx(50.0).epsilon(1e-9));

  const Scenario stubborn =
      load_scenario(scenario_dir() + "/split100-irrational.scn");
  CHECK(stubborn.delta1.a == 0.0);
  CHECK(stubborn.delta2.a == 0.0);
  CHECK(solve(stubborn.to_game(), stubborn.options).status ==
        SolveStatus::degenerate);

  const Scenario mixed = load_scenario(scenario_dir() + "/split100-mixed.scn");
  CHECK(mixed.delta1.a == 0.0);
  CHECK(mixed.delta2.a == 1.0);
  const Solution edge = solve(mixed.to_game(), mixed.options);
  CHECK(edge.diagnostics.paper_boundary_claim_mismatch);

  const Scenario randomized =
      load_scenario(scenario_dir() + "/split100-beta.scn");
  CHECK_FALSE(randomized.deterministic());
  CHECK(randomized.delta1.kind == DeltaDistribution::Kind::beta);
  CHECK(randomized.delta2.kind == DeltaDistribution::Kind::beta);
  CHECK(randomized.delta1.a == 2.0);
  CHECK(randomized.delta1.b == 2.0);

  const std::string missing = scenario_error_of(
      [&] { load_scenario(scenario_dir() + "/does-not-exist.scn"); });
  CHECK(contains(missing, "cannot open"));
}

TEST_CASE("format_g9 prints nine significant locale free digits") {
  CHECK(format_g9(50.0) == "50");
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(-0.0) == "0");
  CHECK(format_g9(0.1) == "0.1");
  CHECK(format_g9(1.0 / 3.0) == "0.333333333");
  CHECK(format_g9(23.2142857142857) == "23.2142857");
  CHECK(format_g9(61.4285714285714) == "61.4285714");
  CHECK(format_g9(2500.0) == "2500");
  CHECK(format_g9(0.00125) == "0.00125");
  CHECK(format_g9(1e-9) == "1e-09");
  CHECK(format_g9(1e20) == "1e+20");
  CHECK(format_g9(-12.5) == "-12.5");
}

TEST_CASE("status names are stable strings") {
  CHECK(std::string(solve_status_name(SolveStatus::agreement)) == "agreement");
  CHECK(std::string(solve_status_name(SolveStatus::disagreement)) ==
        "disagreement");
  CHECK(std::string(solve_status_name(SolveStatus::degenerate)) ==
        "degenerate");
  CHECK(std::string(row_status_name(RowStatus::agreement)) == "agreement");
  CHECK(std::string(row_status_name(RowStatus::failed)) == "failed");
}

TEST_CASE("solution csv emits the benchmark row byte for byte") {
  const Solution sol = closed_form_example(1.0, 1.0);
  const std::string expected =
      "delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,"
      "nash_product,status\n"
      "1,1,50,50,50,50,50,50,2500,agreement\n";
  CHECK(solution_csv(1.0, 1.0, sol) == expected);
}

TEST_CASE("solution csv leaves missing allocations empty") {
  Solution sol;
  sol.status = SolveStatus::disagreement;
  sol.p_star = {60.0, 60.0};
  sol.disagreement = {60.0, 60.0};
  sol.nash_product = 0.0;
  const std::string text = solution_csv(0.5, 0.5, sol);
  CHECK(contains(text, "\n0.5,0.5,,,60,60,,,0,disagreement\n"));
}

TEST_CASE("sweep csv carries the bargaining area column") {
  const GameTemplate tpl = GameTemplate::split_budget(100.0);
  const std::vector<double> one = {1.0};
  const std::string text = sweep_csv(sweep_grid(tpl, one, one));
  CHECK(text ==
        "delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,"
        "bargaining_area,status\n"
        "1,1,50,50,50,50,50,50,5000,agreement\n");

  GameTemplate broken = tpl;
  broken.player1.rational_value = ValueExpr::parse("1 / (s1 - s1)");
  const std::vector<double> half = {0.5};
  const std::string failed = sweep_csv(sweep_grid(broken, half, half));
  CHECK(contains(failed, "\n0.5,0.5,,,,,,,,failed\n"));
}

TEST_CASE("monte carlo csv is deterministic and summarized") {
  const GameTemplate tpl = GameTemplate::split_budget(100.0);
  const MonteCarloReport report =
      monte_carlo(tpl, DeltaDistribution::point(1.0),
                  DeltaDistribution::point(1.0), 3, 7);
  const std::string expected =
      "index,delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,"
      "status\n"
      "0,1,1,50,50,50,50,50,50,agreement\n"
      "1,1,1,50,50,50,50,50,50,agreement\n"
      "2,1,1,50,50,50,50,50,50,agreement\n"
      "# quantity,count,mean,sd,q05,q25,q50,q75,q95\n"
      "# delta1,3,1,0,1,1,1,1,1\n"
      "# delta2,3,1,0,1,1,1,1,1\n"
      "# s1_star,3,50,0,50,50,50,50,50\n"
      "# s2_star,3,50,0,50,50,50,50,50\n"
      "# p1_star,3,50,0,50,50,50,50,50\n"
      "# p2_star,3,50,0,50,50,50,50,50\n"
      "# disagreement_rate,0\n"
      "# failed_samples,0\n"
      "# samples,3\n"
      "# seed,7\n";
  CHECK(monte_carlo_csv(report) == expected);

  const DeltaDistribution beta = DeltaDistribution::beta(2.0, 2.0);
  const std::string first =
      monte_carlo_csv(monte_carlo(tpl, beta, beta, 50, 99));
  const std::string second =
      monte_carlo_csv(monte_carlo(tpl, beta, beta, 50, 99));
  CHECK(first == second);
}

TEST_CASE("bargaining csv annotates area and flags") {
  const GameTemplate tpl = GameTemplate::split_budget(100.0);
  const std::string text = bargaining_csv(bargaining_set(tpl.instantiate(1.0, 1.0), 2));
  CHECK(contains(text, "s1,s2,p1,p2\n"));
  CHECK(contains(text, "\n0,0,0,0\n"));
  CHECK(contains(text, "\n100,0,100,0\n"));
  CHECK(contains(text, "# area,5000\n"));
  CHECK(contains(text, "# degenerate,false\n"));
  CHECK(contains(text, "# boundary_claim_mismatch,false\n"));

  const std::string mismatch =
      bargaining_csv(bargaining_set(tpl.instantiate(0.0, 1.0), 2));
  CHECK(contains(mismatch, "# area,2500\n"));
  CHECK(contains(mismatch, "# boundary_claim_mismatch,true\n"));
}

TEST_CASE("transcript csv records one deterministic play") {
  const GameSpec game = GameTemplate::split_budget(100.0).instantiate(1.0, 1.0);
  const DemandGameTranscript t = run_demand_game(game);
  CHECK(transcript_csv(t) ==
        "t_payoff1,t_payoff2,q1,q2,compatible,final1,final2\n"
        "0,0,50,50,true,50,50\n");
}

TEST_CASE("welfare csv prints one row per player") {
  const GameSpec game = GameTemplate::split_budget(100.0).instantiate(1.0, 1.0);
  const std::string text = welfare_csv(welfare_report(game, solve(game)));
  CHECK(text ==
        "player,behavioral_payoff,rational_value,distortion_value,"
        "decomposition_residual,welfare_gap\n"
        "1,50,50,0,0,0\n"
        "2,50,50,0,0,0\n");
}
