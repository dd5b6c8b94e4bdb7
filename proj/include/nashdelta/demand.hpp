#ifndef NASHDELTA_DEMAND_HPP
#define NASHDELTA_DEMAND_HPP

#include <optional>

#include "nashdelta/solver.hpp"

namespace nashdelta {

/// One play of the demand game: threats fix the disagreement payoffs and
/// are announced, both players announce payoff demands, and the demands are
/// honored iff some feasible allocation meets both at once; otherwise the
/// threats are carried out.
struct DemandGameTranscript {
  /// The threat allocation when the game specifies threats rather than raw
  /// disagreement payoffs.
  std::optional<Vec2> threat_allocation;
  Vec2 threat_payoffs{0.0, 0.0};

  /// Threats were announced. The announcement carries no strategic
  /// content here; the flag only records that the stage happened.
  bool announced = true;

  /// Announced demands (q1, q2).
  Vec2 demands{0.0, 0.0};

  bool compatible = false;

  /// A feasible payoff pair meeting both demands, when one exists.
  std::optional<Vec2> witness;

  /// Demands if compatible, threat payoffs otherwise.
  Vec2 final_payoffs{0.0, 0.0};
};

/// The payoff demands induced by the product-maximizing solution.
Vec2 nash_demands(const GameSpec& game, const SolverOptions& options = {});

/// A feasible allocation s with p1(s) >= q1 and p2(s) >= q2, if any exists
/// (weak inequalities, at scale-relative tolerance). Affine games answer
/// exactly by intersecting half-planes; otherwise the outcome space is
/// rastered at `resolution` points per axis and scanned row by row.
std::optional<Vec2> compatibility_witness(const GameSpec& game, double q1,
                                          double q2, int resolution = 400);

bool demands_compatible(const GameSpec& game, double q1, double q2,
                        int resolution = 400);

/// Play out the four stages. `threats` overrides the game's disagreement
/// specification when given; when `demands` is not given both players
/// announce their product-maximizing payoffs.
DemandGameTranscript run_demand_game(const GameSpec& game,
                                     std::optional<Disagreement> threats = {},
                                     std::optional<Vec2> demands = {},
                                     const SolverOptions& options = {});

}  // namespace nashdelta

#endif
