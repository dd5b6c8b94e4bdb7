#ifndef NASHDELTA_BARGAINING_HPP
#define NASHDELTA_BARGAINING_HPP

#include <optional>
#include <vector>

#include "nashdelta/game.hpp"

namespace nashdelta {

/// An allocation together with the payoff pair it induces.
struct CloudPoint {
  double s1 = 0.0;
  double s2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

struct PayoffPointCloud {
  std::vector<CloudPoint> points;
  int resolution = 0;
};

/// Payoff pairs reachable from agreements that leave neither player below
/// the disagreement point.
struct BargainingSet {
  /// Rasterized members, at most resolution^2 of them and possibly none.
  PayoffPointCloud cloud;

  /// Exact boundary ring in payoff space, counter clockwise. Present only
  /// when both payoff maps are affine; singleton and segment shaped sets
  /// keep their (deduplicated) defining points here.
  std::vector<Vec2> boundary;

  /// Counted cell estimate of the payoff space area, always filled from the
  /// raster; for affine games exact_area is authoritative.
  double area_estimate = 0.0;
  std::optional<double> exact_area;

  /// exact_area when available, otherwise area_estimate.
  double area = 0.0;

  /// Payoff pairs traced along the efficient allocation frontier.
  std::vector<Vec2> pareto_frontier;

  /// True when the set has no interior (empty, a point or a segment).
  bool is_degenerate = false;

  /// True when exactly one rationality index is zero yet the set still has
  /// points strictly dominating the disagreement point; see README, section
  /// on boundary behavior.
  bool paper_boundary_claim_mismatch = false;
};

/// Evaluate payoffs over an inclusive resolution x resolution grid covering
/// the outcome space bounding box, keeping feasible allocations only. Grid
/// rows iterate s1 in the outer loop.
PayoffPointCloud payoff_image(const GameSpec& game, int resolution);

BargainingSet bargaining_set(const GameSpec& game, int resolution = 400);

/// Area only. Affine games skip the raster entirely, so delta sweeps stay
/// cheap.
double bargaining_area(const GameSpec& game, int resolution = 400);

}  // namespace nashdelta

#endif
