#ifndef NASHDELTA_SOLVER_HPP
#define NASHDELTA_SOLVER_HPP

#include <optional>
#include <string>

#include "nashdelta/game.hpp"

namespace nashdelta {

struct SolverOptions {
  /// Points per axis for the raster fallback (and for anything downstream
  /// that rasterizes). Must be at least 16.
  int grid_resolution = 400;

  /// Compass search stops once its step, relative to the outcome scale,
  /// falls below this.
  double refinement_tolerance = 1e-9;

  int max_refinement_steps = 200;

  /// Solve affine games exactly by edge enumeration instead of rastering.
  bool affine_fast_path = true;
};

enum class SolveStatus { agreement, disagreement, degenerate };

struct SolveDiagnostics {
  /// "affine_exact" or "grid_refine".
  std::string method;

  /// First order optimality check along the binding edge at the solution;
  /// unset when the solution sits at a vertex or there was no agreement.
  std::optional<double> stationarity_residual;

  int refinement_steps = 0;

  /// Compass search hit max_refinement_steps before its step shrank to the
  /// requested tolerance.
  bool budget_exhausted = false;

  /// Exactly one player has rationality index zero, yet an agreement with
  /// positive surplus for both exists. See README on boundary behavior.
  bool paper_boundary_claim_mismatch = false;
};

struct Solution {
  /// Agreed allocation; unset when status is not agreement.
  std::optional<Vec2> s_star;

  /// Realized payoffs: the agreement payoffs, or the disagreement point.
  Vec2 p_star{0.0, 0.0};

  /// Rational values (U1, U2) at the agreed allocation.
  std::optional<Vec2> u_star;

  /// Disagreement payoffs the product was measured against.
  Vec2 disagreement{0.0, 0.0};

  /// (p1* - d1) * (p2* - d2); zero when no agreement.
  double nash_product = 0.0;

  SolveStatus status = SolveStatus::disagreement;
  SolveDiagnostics diagnostics;
};

/// (p1 - d1)(p2 - d2) at an allocation, against the game's disagreement
/// payoffs.
double nash_product(const GameSpec& game, double s1, double s2);

/// Maximize the payoff product over allocations that leave neither player
/// below the disagreement point.
///
/// Status is decided by surplus margins at scale-relative tolerance eps:
/// a product above eps^2 is an agreement; otherwise, if some admissible
/// point still beats the disagreement payoff by more than eps for one
/// player the game is scored a disagreement (the product maximum pins the
/// other player at their disagreement value); if admissible points exist
/// but none moves either payoff, the admissible set has collapsed onto the
/// disagreement point and the game is degenerate; with no admissible point
/// at all it is again a disagreement.
Solution solve(const GameSpec& game, const SolverOptions& options = {});

/// Closed form for the canonical split-the-budget game (U1 = s1, U2 = s2,
/// D1 = s1 - s2, D2 = s2 - s1, disagreement (0, 0)). Requires
/// 0 < delta1, delta2 <= 1.
Solution closed_form_example(double delta1, double delta2,
                             double budget = 100.0);

/// |d/dt log((p1-d1)(p2-d2))| along the outcome-space edge through the
/// agreed allocation, by central differences. Unset when there is no
/// agreement, the allocation sits at a vertex, or the product is not
/// positive there. An interior allocation reports the full gradient norm
/// instead of an edge derivative.
std::optional<double> stationarity_residual(const GameSpec& game,
                                            const Solution& solution);

}  // namespace nashdelta

#endif
