#include "nashdelta/demand.hpp"

#include <cmath>

namespace nashdelta {

Vec2 nash_demands(const GameSpec& game, const SolverOptions& options) {
  return solve(game, options).p_star;
}

std::optional<Vec2> compatibility_witness(const GameSpec& game, double q1,
                                          double q2, int resolution) {
  require_valid(game);
  const double eps = 1e-9 * game.outcome_space.scale();

  if (const auto aff = affine_payoffs(game)) {
    // p_i(s) >= q_i is the half-plane -c1*s1 - c2*s2 <= c0 - q_i; the
    // demand region is the outcome space cut by both, so emptiness and a
    // witness vertex come straight from the polygon machinery. The eps
    // slack keeps exactly-on-the-frontier demands compatible.
    std::vector<LinearConstraint> cs = game.outcome_space.constraints();
    cs.push_back({-aff->p1.c1, -aff->p1.c2, aff->p1.c0 - q1 + eps});
    cs.push_back({-aff->p2.c1, -aff->p2.c2, aff->p2.c0 - q2 + eps});
    FeasiblePolygon region(std::move(cs));
    if (!region.ok()) return std::nullopt;
    return region.vertices().front();
  }

  Vec2 lo, hi;
  game.outcome_space.bounding_box(lo, hi);
  const int nx = hi.x > lo.x ? resolution : 1;
  const int ny = hi.y > lo.y ? resolution : 1;
  for (int i = 0; i < nx; ++i) {
    const double s1 =
        nx == 1 ? lo.x : lo.x + (hi.x - lo.x) * i / double(nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double s2 =
          ny == 1 ? lo.y : lo.y + (hi.y - lo.y) * j / double(ny - 1);
      if (!game.outcome_space.contains(s1, s2)) continue;
      const Vec2 p = payoff_pair(game, s1, s2);
      if (p.x >= q1 - eps && p.y >= q2 - eps) return Vec2{s1, s2};
    }
  }
  return std::nullopt;
}

bool demands_compatible(const GameSpec& game, double q1, double q2,
                        int resolution) {
  return compatibility_witness(game, q1, q2, resolution).has_value();
}

DemandGameTranscript run_demand_game(const GameSpec& game,
                                     std::optional<Disagreement> threats,
                                     std::optional<Vec2> demands,
                                     const SolverOptions& options) {
  GameSpec staged = game;
  if (threats) staged.disagreement = *threats;
  require_valid(staged);

  DemandGameTranscript t;
  if (staged.disagreement.kind == Disagreement::Kind::threats) {
    t.threat_allocation = staged.disagreement.value;
  }
  t.threat_payoffs = resolve_disagreement(staged);
  t.announced = true;
  t.demands = demands ? *demands : nash_demands(staged, options);
  const auto witness_allocation = compatibility_witness(
      staged, t.demands.x, t.demands.y, options.grid_resolution);
  if (witness_allocation) {
    t.witness = payoff_pair(staged, witness_allocation->x,
                            witness_allocation->y);
  }
  t.compatible = t.witness.has_value();
  t.final_payoffs = t.compatible ? t.demands : t.threat_payoffs;
  return t;
}

}  // namespace nashdelta
