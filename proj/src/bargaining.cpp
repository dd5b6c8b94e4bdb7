#include "nashdelta/bargaining.hpp"

#include <algorithm>
#include <cmath>

namespace nashdelta {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs;
  if (hi <= lo) {
    xs.push_back(lo);
    return xs;
  }
  xs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(count - 1));
  }
  return xs;
}

std::vector<Vec2> dedupe_ring(std::vector<Vec2> ring, double tol) {
  std::vector<Vec2> out;
  for (const Vec2& p : ring) {
    bool seen = false;
    for (const Vec2& q : out) {
      if (std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

// Numeric Jacobian determinant of the payoff map at an allocation, by
// central differences. Used to weigh raster cells when the map is not
// affine (and as a cross check when it is).
double payoff_jacobian_det(const GameSpec& game, double s1, double s2,
                           double step) {
  const Vec2 px1 = payoff_pair(game, s1 + step, s2);
  const Vec2 px0 = payoff_pair(game, s1 - step, s2);
  const Vec2 py1 = payoff_pair(game, s1, s2 + step);
  const Vec2 py0 = payoff_pair(game, s1, s2 - step);
  const double d11 = (px1.x - px0.x) / (2.0 * step);
  const double d12 = (py1.x - py0.x) / (2.0 * step);
  const double d21 = (px1.y - px0.y) / (2.0 * step);
  const double d22 = (py1.y - py0.y) / (2.0 * step);
  return d11 * d22 - d12 * d21;
}

}  // namespace

PayoffPointCloud payoff_image(const GameSpec& game, int resolution) {
  if (resolution < 2) {
    throw std::invalid_argument("payoff_image resolution must be at least 2");
  }
  require_valid(game);

  Vec2 lo, hi;
  game.outcome_space.bounding_box(lo, hi);
  const auto xs = linspace(lo.x, hi.x, resolution);
  const auto ys = linspace(lo.y, hi.y, resolution);

  PayoffPointCloud cloud;
  cloud.resolution = resolution;
  cloud.points.reserve(xs.size() * ys.size() / 2);
  for (double s1 : xs) {
    for (double s2 : ys) {
      if (!game.outcome_space.contains(s1, s2)) continue;
      const Vec2 p = payoff_pair(game, s1, s2);
      cloud.points.push_back({s1, s2, p.x, p.y});
    }
  }
  return cloud;
}

BargainingSet bargaining_set(const GameSpec& game, int resolution) {
  require_valid(game);
  BargainingSet set;
  const Vec2 d = resolve_disagreement(game);
  const double scale = game.outcome_space.scale();
  const double tol = 1e-9 * scale;
  const double area_tol = 1e-9 * scale * scale;

  // Raster membership and the counted cell area estimate.
  PayoffPointCloud image = payoff_image(game, resolution);
  Vec2 lo, hi;
  game.outcome_space.bounding_box(lo, hi);
  const double dx =
      hi.x > lo.x ? (hi.x - lo.x) / static_cast<double>(resolution - 1) : 0.0;
  const double dy =
      hi.y > lo.y ? (hi.y - lo.y) / static_cast<double>(resolution - 1) : 0.0;
  const double cell = dx * dy;
  const double step = 1e-6 * scale;

  set.cloud.resolution = resolution;
  double estimate = 0.0;
  for (const CloudPoint& pt : image.points) {
    if (pt.p1 < d.x - tol || pt.p2 < d.y - tol) continue;
    set.cloud.points.push_back(pt);
    if (cell > 0.0) {
      estimate +=
          cell * std::abs(payoff_jacobian_det(game, pt.s1, pt.s2, step));
    }
  }
  set.area_estimate = estimate;

  // Exact boundary for affine payoff maps: the image of a convex polygon
  // under an affine map is the polygon of mapped vertices, and dominance is
  // a pair of half-plane cuts.
  if (const auto aff = affine_payoffs(game)) {
    std::vector<Vec2> image_ring;
    for (const Vec2& v : game.outcome_space.vertices()) {
      image_ring.push_back(
          {aff->p1.eval(v.x, v.y), aff->p2.eval(v.x, v.y)});
    }
    const double det = aff->p1.c1 * aff->p2.c2 - aff->p1.c2 * aff->p2.c1;
    if (det < 0.0) {
      std::reverse(image_ring.begin(), image_ring.end());
    }
    auto clipped = clip_halfplane(image_ring, -1.0, 0.0, -d.x);
    clipped = clip_halfplane(clipped, 0.0, -1.0, -d.y);
    set.boundary = dedupe_ring(std::move(clipped), tol);
    set.exact_area = polygon_area(set.boundary);
    set.area = *set.exact_area;
    set.is_degenerate = set.boundary.size() < 3 || set.area <= area_tol;
  } else {
    set.area = set.area_estimate;
    set.is_degenerate =
        set.cloud.points.empty() || set.area_estimate <= area_tol;
  }

  const bool one_zero = (game.player1.delta == 0.0) != (game.player2.delta == 0.0);
  set.paper_boundary_claim_mismatch = one_zero && !set.is_degenerate;

  // Payoffs along the efficient allocation frontier.
  const auto frontier = efficient_frontier(game.outcome_space, resolution);
  set.pareto_frontier.reserve(frontier.size());
  for (const Vec2& s : frontier) {
    set.pareto_frontier.push_back(payoff_pair(game, s.x, s.y));
  }
  return set;
}

double bargaining_area(const GameSpec& game, int resolution) {
  require_valid(game);
  const Vec2 d = resolve_disagreement(game);
  const double scale = game.outcome_space.scale();
  const double tol = 1e-9 * scale;

  if (const auto aff = affine_payoffs(game)) {
    std::vector<Vec2> image_ring;
    for (const Vec2& v : game.outcome_space.vertices()) {
      image_ring.push_back(
          {aff->p1.eval(v.x, v.y), aff->p2.eval(v.x, v.y)});
    }
    const double det = aff->p1.c1 * aff->p2.c2 - aff->p1.c2 * aff->p2.c1;
    if (det < 0.0) {
      std::reverse(image_ring.begin(), image_ring.end());
    }
    auto clipped = clip_halfplane(image_ring, -1.0, 0.0, -d.x);
    clipped = clip_halfplane(clipped, 0.0, -1.0, -d.y);
    return polygon_area(dedupe_ring(std::move(clipped), tol));
  }
  return bargaining_set(game, resolution).area_estimate;
}

}  // namespace nashdelta
