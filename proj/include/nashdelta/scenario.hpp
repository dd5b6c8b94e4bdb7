#ifndef NASHDELTA_SCENARIO_HPP
#define NASHDELTA_SCENARIO_HPP

#include <stdexcept>
#include <string>

#include "nashdelta/analysis.hpp"

namespace nashdelta {

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& message)
      : std::runtime_error(message) {}
};

/// A game description loaded from a .scn file (JSON). Rationality indices
/// may be fixed numbers or sampling distributions, so one file serves both
/// the deterministic commands and the Monte Carlo driver.
struct Scenario {
  GameTemplate game;
  DeltaDistribution delta1 = DeltaDistribution::point(1.0);
  DeltaDistribution delta2 = DeltaDistribution::point(1.0);
  SolverOptions options;

  /// Both indices are fixed numbers.
  bool deterministic() const {
    return delta1.kind == DeltaDistribution::Kind::point &&
           delta2.kind == DeltaDistribution::Kind::point;
  }

  /// Instantiate at the fixed indices; throws ScenarioError when the
  /// scenario is not deterministic.
  GameSpec to_game() const;
};

/// Parse and validate a scenario file. Unknown keys are rejected by full
/// key path; malformed JSON reports the line it failed on.
Scenario load_scenario(const std::string& path);

Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin = "<string>");

}  // namespace nashdelta

#endif
