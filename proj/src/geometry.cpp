#include "nashdelta/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nashdelta {

namespace {

// Intersection of the boundary lines of two constraints, if they are not
// parallel. Cramer's rule with a determinant cutoff scaled to the
// coefficients.
bool intersect_lines(const LinearConstraint& p, const LinearConstraint& q,
                     Vec2& out) {
  const double det = p.a1 * q.a2 - p.a2 * q.a1;
  const double norm = std::max({std::abs(p.a1), std::abs(p.a2),
                                std::abs(q.a1), std::abs(q.a2), 1.0});
  if (std::abs(det) <= 1e-12 * norm * norm) return false;
  out.x = (p.b * q.a2 - q.b * p.a2) / det;
  out.y = (p.a1 * q.b - q.a1 * p.b) / det;
  return true;
}

// A constraint with a1 = a2 = 0 restricts nothing (b >= 0) or everything
// (b < 0); real constraints have a nonzero normal.
bool is_trivial(const LinearConstraint& c) {
  return c.a1 == 0.0 && c.a2 == 0.0;
}

// The feasible region is unbounded iff its recession cone contains a nonzero
// direction d with a_i . d <= 0 for every constraint i. For a cone spanned by
// finitely many half-planes it is enough to test the directions perpendicular
// to each constraint normal: if any ray escapes it can be rotated until it
// lies on a cone facet, and each facet direction is +-perp(a_i) for some i.
bool recession_cone_nontrivial(const std::vector<LinearConstraint>& cs) {
  for (const auto& c : cs) {
    if (is_trivial(c)) continue;
    const double len = std::hypot(c.a1, c.a2);
    const Vec2 dirs[2] = {{-c.a2 / len, c.a1 / len}, {c.a2 / len, -c.a1 / len}};
    for (const Vec2& d : dirs) {
      bool escapes = true;
      for (const auto& other : cs) {
        if (is_trivial(other)) continue;
        const double olen = std::hypot(other.a1, other.a2);
        if ((other.a1 * d.x + other.a2 * d.y) / olen > 1e-12) {
          escapes = false;
          break;
        }
      }
      if (escapes) return true;
    }
  }
  return false;
}

}  // namespace

FeasiblePolygon::FeasiblePolygon(std::vector<LinearConstraint> constraints)
    : constraints_(std::move(constraints)) {
  scale_ = 1.0;
  for (const auto& c : constraints_) {
    scale_ = std::max(scale_, std::abs(c.b));
  }
  const double tol = tolerance();

  bool has_real_constraint = false;
  for (const auto& c : constraints_) {
    if (is_trivial(c)) {
      if (c.b < -tol) {
        status_ = Status::empty;  // 0 <= b fails: nothing is feasible
        return;
      }
      continue;
    }
    has_real_constraint = true;
  }
  if (!has_real_constraint) {
    status_ = Status::unbounded;  // whole plane
    return;
  }

  // Candidate vertices: all pairwise boundary intersections that satisfy
  // every constraint.
  std::vector<Vec2> candidates;
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints_.size(); ++j) {
      Vec2 p;
      if (!intersect_lines(constraints_[i], constraints_[j], p)) continue;
      bool feasible = true;
      for (const auto& c : constraints_) {
        if (c.slack(p.x, p.y) < -tol) {
          feasible = false;
          break;
        }
      }
      if (feasible) candidates.push_back(p);
    }
  }

  if (candidates.empty()) {
    // No vertex. A nonempty region with two independent constraint
    // directions always has a vertex, and that vertex is a feasible pairwise
    // intersection, so feasible intersections exist. Contrapositive: if some
    // pair of lines crossed yet no crossing was feasible, the region is
    // empty.
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      for (std::size_t j = i + 1; j < constraints_.size(); ++j) {
        Vec2 p;
        if (intersect_lines(constraints_[i], constraints_[j], p)) {
          status_ = Status::empty;
          return;
        }
      }
    }
    // All normals parallel: the region is the slab lo <= u . s <= hi along
    // the shared axis, empty when the bounds contradict and unbounded
    // otherwise.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    Vec2 axis{0.0, 0.0};
    for (const auto& c : constraints_) {
      if (is_trivial(c)) continue;
      const double len = std::hypot(c.a1, c.a2);
      if (axis.x == 0.0 && axis.y == 0.0) {
        axis = {c.a1 / len, c.a2 / len};
      }
      const double aligned = (c.a1 * axis.x + c.a2 * axis.y) / len;
      if (aligned > 0.0) {
        hi = std::min(hi, c.b / len);
      } else {
        lo = std::max(lo, -c.b / len);
      }
    }
    status_ = lo <= hi + tol ? Status::unbounded : Status::empty;
    return;
  }

  if (recession_cone_nontrivial(constraints_)) {
    status_ = Status::unbounded;
    return;
  }

  // Deduplicate.
  const double merge_tol = std::max(tol, 1e-9);
  std::vector<Vec2> unique;
  for (const Vec2& p : candidates) {
    bool seen = false;
    for (const Vec2& q : unique) {
      if (std::abs(p.x - q.x) <= merge_tol && std::abs(p.y - q.y) <= merge_tol) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(p);
  }

  if (unique.size() == 1) {
    vertices_ = std::move(unique);
    status_ = Status::ok;
    return;
  }

  // Order counter clockwise around the centroid.
  Vec2 centroid{0.0, 0.0};
  for (const Vec2& p : unique) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= static_cast<double>(unique.size());
  centroid.y /= static_cast<double>(unique.size());
  std::sort(unique.begin(), unique.end(), [&](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y - centroid.y, a.x - centroid.x) <
           std::atan2(b.y - centroid.y, b.x - centroid.x);
  });

  // Drop interior collinear vertices so the ring is minimal.
  if (unique.size() >= 3) {
    std::vector<Vec2> ring;
    const std::size_t n = unique.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = unique[(i + n - 1) % n];
      const Vec2& cur = unique[i];
      const Vec2& next = unique[(i + 1) % n];
      const double cross = (cur.x - prev.x) * (next.y - prev.y) -
                           (cur.y - prev.y) * (next.x - prev.x);
      const double span = std::max({std::abs(next.x - prev.x),
                                    std::abs(next.y - prev.y), 1.0});
      if (std::abs(cross) > merge_tol * span) ring.push_back(cur);
    }
    if (ring.size() >= 3) unique = std::move(ring);
  }

  // Rotate so the ring starts at the lexicographically smallest vertex;
  // callers then see a deterministic ordering.
  auto smallest = std::min_element(
      unique.begin(), unique.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
      });
  std::rotate(unique.begin(), smallest, unique.end());

  vertices_ = std::move(unique);
  status_ = Status::ok;
}

FeasiblePolygon FeasiblePolygon::budget(double budget) {
  return FeasiblePolygon({{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {1.0, 1.0, budget}});
}

const std::vector<Vec2>& FeasiblePolygon::vertices() const {
  if (status_ != Status::ok) {
    throw GeometryError(status_ == Status::empty
                            ? "outcome space is empty"
                            : "outcome space is unbounded");
  }
  return vertices_;
}

bool FeasiblePolygon::contains(double s1, double s2) const {
  const double tol = tolerance();
  for (const auto& c : constraints_) {
    if (c.slack(s1, s2) < -tol) return false;
  }
  return true;
}

void FeasiblePolygon::bounding_box(Vec2& lo, Vec2& hi) const {
  const auto& vs = vertices();
  lo = {std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity()};
  hi = {-std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity()};
  for (const Vec2& v : vs) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
}

double polygon_area(std::span<const Vec2> ring) {
  if (ring.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

std::vector<Vec2> clip_halfplane(std::span<const Vec2> ring, double a,
                                 double b, double c) {
  std::vector<Vec2> out;
  if (ring.empty()) return out;
  const auto inside = [&](const Vec2& p) { return a * p.x + b * p.y <= c; };
  const auto cross_point = [&](const Vec2& p, const Vec2& q) {
    const double fp = a * p.x + b * p.y - c;
    const double fq = a * q.x + b * q.y - c;
    const double t = fp / (fp - fq);
    return Vec2{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
  };
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2& cur = ring[i];
    const Vec2& next = ring[(i + 1) % ring.size()];
    const bool cur_in = inside(cur);
    const bool next_in = inside(next);
    if (cur_in) {
      out.push_back(cur);
      if (!next_in) out.push_back(cross_point(cur, next));
    } else if (next_in) {
      out.push_back(cross_point(cur, next));
    }
  }
  return out;
}

std::vector<Vec2> efficient_frontier(const FeasiblePolygon& region,
                                     int resolution) {
  if (resolution < 2) {
    throw GeometryError("frontier resolution must be at least 2");
  }
  const auto& vs = region.vertices();
  if (vs.size() == 1) {
    return std::vector<Vec2>(static_cast<std::size_t>(resolution), vs[0]);
  }

  // Endpoints of the northeast boundary chain.
  const auto by_s2_then_s1 = [](const Vec2& a, const Vec2& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  };
  const auto by_s1_then_s2 = [](const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  };
  const std::size_t n = vs.size();
  std::size_t start = 0, stop = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (by_s2_then_s1(vs[start], vs[i])) start = i;
    if (by_s1_then_s2(vs[stop], vs[i])) stop = i;
  }

  // Walk clockwise (against the counter clockwise ring) from start to stop;
  // that traversal keeps the region on the left-below side, i.e. follows the
  // upper-right boundary.
  std::vector<Vec2> chain;
  std::size_t i = start;
  chain.push_back(vs[i]);
  while (i != stop) {
    i = (i + n - 1) % n;
    chain.push_back(vs[i]);
  }

  std::vector<double> cumulative(chain.size(), 0.0);
  for (std::size_t k = 1; k < chain.size(); ++k) {
    cumulative[k] = cumulative[k - 1] + std::hypot(chain[k].x - chain[k - 1].x,
                                                   chain[k].y - chain[k - 1].y);
  }
  const double total = cumulative.back();

  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(resolution));
  if (total == 0.0) {
    points.assign(static_cast<std::size_t>(resolution), chain.front());
    return points;
  }
  for (int k = 0; k < resolution; ++k) {
    const double target =
        total * static_cast<double>(k) / static_cast<double>(resolution - 1);
    std::size_t seg = 1;
    while (seg + 1 < cumulative.size() && cumulative[seg] < target) ++seg;
    const double seg_len = cumulative[seg] - cumulative[seg - 1];
    const double t =
        seg_len > 0.0 ? (target - cumulative[seg - 1]) / seg_len : 0.0;
    points.push_back({chain[seg - 1].x + t * (chain[seg].x - chain[seg - 1].x),
                      chain[seg - 1].y + t * (chain[seg].y - chain[seg - 1].y)});
  }
  return points;
}

}  // namespace nashdelta
