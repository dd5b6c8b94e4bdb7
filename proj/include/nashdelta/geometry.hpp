#ifndef NASHDELTA_GEOMETRY_HPP
#define NASHDELTA_GEOMETRY_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashdelta {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Vec2& a, const Vec2& b) {
  return a.x == b.x && a.y == b.y;
}

/// Half-plane a1*s1 + a2*s2 <= b.
struct LinearConstraint {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;

  double eval(double s1, double s2) const { return a1 * s1 + a2 * s2; }
  double slack(double s1, double s2) const { return b - eval(s1, s2); }
};

class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Convex outcome space cut out by linear inequality constraints.
///
/// Construction classifies the region eagerly: `ok` regions expose a counter
/// clockwise vertex ring starting at the lexicographically smallest vertex,
/// `empty` and `unbounded` regions keep their constraints but vertices()
/// throws. Tolerances scale with the largest constraint bound so games posed
/// in units of 100 and units of 1e6 behave alike.
class FeasiblePolygon {
 public:
  enum class Status { ok, empty, unbounded };

  explicit FeasiblePolygon(std::vector<LinearConstraint> constraints);

  /// 0 <= s1, 0 <= s2, s1 + s2 <= budget.
  static FeasiblePolygon budget(double budget);

  Status status() const { return status_; }
  bool ok() const { return status_ == Status::ok; }

  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }

  /// Counter clockwise vertex ring; throws GeometryError unless status is ok.
  const std::vector<Vec2>& vertices() const;

  /// Largest |b| over the constraints, floored at 1. Used to scale feasibility
  /// and optimizer tolerances.
  double scale() const { return scale_; }
  double tolerance() const { return 1e-9 * scale_; }

  bool contains(double s1, double s2) const;

  /// Axis aligned bounding box of the vertex ring (requires ok status).
  void bounding_box(Vec2& lo, Vec2& hi) const;

 private:
  std::vector<LinearConstraint> constraints_;
  std::vector<Vec2> vertices_;
  Status status_ = Status::empty;
  double scale_ = 1.0;
};

/// Signed shoelace area made absolute. Degenerate rings (fewer than 3
/// vertices) have area 0.
double polygon_area(std::span<const Vec2> ring);

/// Clip a convex counter clockwise ring by the half-plane a*x + b*y <= c.
/// Returns the clipped ring, possibly empty.
std::vector<Vec2> clip_halfplane(std::span<const Vec2> ring, double a,
                                 double b, double c);

/// `resolution` points along the northwest-to-southeast boundary chain of the
/// region, endpoints included, evenly spaced by arc length. The chain runs
/// from the vertex maximizing (s2, then s1) to the vertex maximizing
/// (s1, then s2) in clockwise order, which for the budget triangle is the
/// payoff-efficient edge s1 + s2 = budget.
std::vector<Vec2> efficient_frontier(const FeasiblePolygon& region,
                                     int resolution);

}  // namespace nashdelta

#endif
