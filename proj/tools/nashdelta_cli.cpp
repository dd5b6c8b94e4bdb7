#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nashdelta/csv.hpp"
#include "nashdelta/scenario.hpp"

namespace {

using namespace nashdelta;

// "a:b:step" inclusive on both ends (the endpoint is kept when it lands
// within rounding of b); a bare number is a one element list.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }

  const auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw CLI::ValidationError("range",
                                 "\"" + text + "\" is not a number or a:b:step");
    }
  };

  if (parts.size() == 1) {
    return {to_double(parts[0])};
  }
  if (parts.size() != 3) {
    throw CLI::ValidationError("range",
                               "\"" + text + "\" must be a:b:step or a number");
  }
  const double a = to_double(parts[0]);
  const double b = to_double(parts[1]);
  const double step = to_double(parts[2]);
  if (!(step > 0.0) || b < a) {
    throw CLI::ValidationError(
        "range", "\"" + text + "\" needs a <= b and a positive step");
  }
  std::vector<double> values;
  const long long kmax =
      static_cast<long long>(std::floor((b - a) / step + 1e-9));
  for (long long k = 0; k <= kmax; ++k) {
    double v = a + static_cast<double>(k) * step;
    if (v > b) {
      if (v - b > 1e-6 * step) break;
      v = b;
    }
    values.push_back(v);
  }
  return values;
}

void print_solution_diagnostics(const Solution& sol) {
  std::cerr << "status: " << solve_status_name(sol.status) << '\n';
  std::cerr << "method: " << sol.diagnostics.method << '\n';
  if (sol.diagnostics.stationarity_residual) {
    std::cerr << "stationarity_residual: "
              << format_g9(*sol.diagnostics.stationarity_residual) << '\n';
  }
  if (sol.diagnostics.refinement_steps > 0) {
    std::cerr << "refinement_steps: " << sol.diagnostics.refinement_steps
              << '\n';
  }
  if (sol.diagnostics.budget_exhausted) {
    std::cerr << "warning: refinement step budget exhausted before reaching "
                 "tolerance\n";
  }
  if (sol.diagnostics.paper_boundary_claim_mismatch) {
    std::cerr << "note: one player has rationality index 0 but an agreement "
                 "with positive surplus for both still exists\n";
  }
}

struct Cli {
  std::string scenario_path;
  double delta1 = 1.0;
  double delta2 = 1.0;
  double budget = 100.0;
  std::string range1, range2, range_const;
  int samples = 0;
  std::uint64_t seed = 12345;
  int resolution = 400;
  std::optional<double> demand1, demand2;
  std::optional<double> threat1, threat2;
};

int run(int argc, char** argv) {
  CLI::App app{
      "Nash bargaining with partially rational players: payoffs are "
      "delta * U + (1 - delta) * D and the product (p1 - d1)(p2 - d2) is "
      "maximized over the outcome space"};
  app.require_subcommand(1);
  Cli cli;

  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario", cli.scenario_path,
                    "scenario file (.scn, JSON)")
        ->required();
  };

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve one scenario and print the solution");
  add_scenario(solve_cmd);

  CLI::App* example_cmd = app.add_subcommand(
      "example", "solve the canonical split-the-budget game");
  example_cmd->add_option("--delta1", cli.delta1, "rationality index 1")
      ->required();
  example_cmd->add_option("--delta2", cli.delta2, "rationality index 2")
      ->required();
  example_cmd->add_option("--budget", cli.budget, "total to divide")
      ->capture_default_str();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "solve over a grid of rationality index pairs");
  add_scenario(sweep_cmd);
  sweep_cmd
      ->add_option("--delta1", cli.range1, "a:b:step range for player 1")
      ->required();
  sweep_cmd
      ->add_option("--delta2", cli.range2, "a:b:step range for player 2")
      ->required();

  CLI::App* const_cmd = app.add_subcommand(
      "const-sweep", "solve along the diagonal delta1 = delta2");
  add_scenario(const_cmd);
  const_cmd->add_option("--delta", cli.range_const, "a:b:step range")
      ->required();

  CLI::App* mc_cmd = app.add_subcommand(
      "mc", "sample rationality indices and solve each draw");
  add_scenario(mc_cmd);
  mc_cmd->add_option("--n", cli.samples, "number of samples")->required();
  mc_cmd->add_option("--seed", cli.seed, "random seed")
      ->capture_default_str();

  CLI::App* bset_cmd = app.add_subcommand(
      "bset", "enumerate the bargaining set and its area");
  add_scenario(bset_cmd);
  bset_cmd->add_option("--resolution", cli.resolution,
                       "raster points per axis")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));

  CLI::App* demand_cmd = app.add_subcommand(
      "demand", "play the demand game (defaults to the solution demands)");
  add_scenario(demand_cmd);
  demand_cmd->add_option("--demand1", cli.demand1, "payoff demand 1");
  demand_cmd->add_option("--demand2", cli.demand2, "payoff demand 2");
  demand_cmd->add_option("--threat1", cli.threat1,
                         "threat allocation coordinate 1");
  demand_cmd->add_option("--threat2", cli.threat2,
                         "threat allocation coordinate 2");

  CLI::App* welfare_cmd = app.add_subcommand(
      "welfare", "compare realized rational value against full rationality");
  add_scenario(welfare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (example_cmd->parsed()) {
    // Inside the closed form's domain the command is a pure oracle; on the
    // delta = 0 boundary it falls back to the solver.
    Solution sol;
    if (cli.delta1 > 0.0 && cli.delta2 > 0.0) {
      sol = closed_form_example(cli.delta1, cli.delta2, cli.budget);
    } else {
      sol = solve(GameTemplate::split_budget(cli.budget)
                      .instantiate(cli.delta1, cli.delta2));
    }
    std::cout << solution_csv(cli.delta1, cli.delta2, sol);
    print_solution_diagnostics(sol);
    return 0;
  }

  const Scenario scenario = load_scenario(cli.scenario_path);

  if (solve_cmd->parsed()) {
    const GameSpec game = scenario.to_game();
    const Solution sol = solve(game, scenario.options);
    std::cout << solution_csv(scenario.delta1.a, scenario.delta2.a, sol);
    print_solution_diagnostics(sol);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const auto d1 = parse_range(cli.range1);
    const auto d2 = parse_range(cli.range2);
    const SweepTable table =
        sweep_grid(scenario.game, d1, d2, scenario.options);
    std::cout << sweep_csv(table);
    return 0;
  }

  if (const_cmd->parsed()) {
    const auto d = parse_range(cli.range_const);
    const SweepTable table = sweep_constant(scenario.game, d, scenario.options);
    std::cout << sweep_csv(table);
    return 0;
  }

  if (mc_cmd->parsed()) {
    if (cli.samples < 1) {
      std::cerr << "error: --n must be at least 1\n";
      return 1;
    }
    const MonteCarloReport report =
        monte_carlo(scenario.game, scenario.delta1, scenario.delta2,
                    cli.samples, cli.seed, scenario.options);
    std::cout << monte_carlo_csv(report);
    if (report.failed_count > 0) {
      std::cerr << "warning: " << report.failed_count
                << " of " << report.sample_count << " samples failed\n";
    }
    return 0;
  }

  if (bset_cmd->parsed()) {
    const BargainingSet set =
        bargaining_set(scenario.to_game(), cli.resolution);
    std::cout << bargaining_csv(set);
    if (set.paper_boundary_claim_mismatch) {
      std::cerr << "note: one player has rationality index 0 but the set "
                   "still has positive area\n";
    }
    return 0;
  }

  if (demand_cmd->parsed()) {
    if (cli.demand1.has_value() != cli.demand2.has_value()) {
      std::cerr << "error: --demand1 and --demand2 go together\n";
      return 1;
    }
    if (cli.threat1.has_value() != cli.threat2.has_value()) {
      std::cerr << "error: --threat1 and --threat2 go together\n";
      return 1;
    }
    std::optional<Vec2> demands;
    if (cli.demand1) demands = Vec2{*cli.demand1, *cli.demand2};
    std::optional<Disagreement> threats;
    if (cli.threat1) threats = Disagreement::threats(*cli.threat1, *cli.threat2);
    const DemandGameTranscript t = run_demand_game(
        scenario.to_game(), threats, demands, scenario.options);
    std::cout << transcript_csv(t);
    return 0;
  }

  if (welfare_cmd->parsed()) {
    const GameSpec game = scenario.to_game();
    const Solution sol = solve(game, scenario.options);
    const WelfareReport report = welfare_report(game, sol, scenario.options);
    std::cout << welfare_csv(report);
    print_solution_diagnostics(sol);
    return 0;
  }

  std::cerr << "error: no subcommand\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const GameValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
