#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "nashdelta/bargaining.hpp"

using namespace nashdelta;

namespace {

GameSpec canonical_game(double delta1, double delta2) {
  GameSpec game;
  game.player1 = {ValueExpr::parse("s1"), ValueExpr::parse("s1 - s2"), delta1};
  game.player2 = {ValueExpr::parse("s2"), ValueExpr::parse("s2 - s1"), delta2};
  game.outcome_space = FeasiblePolygon::budget(100.0);
  game.disagreement = Disagreement::payoffs(0.0, 0.0);
  return game;
}

// Oracle for the exact area, written directly against the model: map the
// simplex corners through p1 = s1 - (1-d1)*s2, p2 = s2 - (1-d2)*s1, cut the
// image down to the first quadrant with a local Sutherland-Hodgman pass and
// measure with a local shoelace. Shares no code with the library geometry.
struct P {
  double x, y;
};

std::vector<P> oracle_clip(const std::vector<P>& ring, double nx, double ny) {
  // keep nx*x + ny*y >= 0
  std::vector<P> out;
  const auto side = [&](const P& p) { return nx * p.x + ny * p.y; };
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const P& a = ring[i];
    const P& b = ring[(i + 1) % ring.size()];
    const double fa = side(a);
    const double fb = side(b);
    if (fa >= 0.0) out.push_back(a);
    if ((fa >= 0.0) != (fb >= 0.0)) {
      const double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

double oracle_shoelace(const std::vector<P>& ring) {
  if (ring.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const P& a = ring[i];
    const P& b = ring[(i + 1) % ring.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

double oracle_area(double d1, double d2, double budget = 100.0) {
  const auto map = [&](double s1, double s2) {
    return P{s1 - (1.0 - d1) * s2, s2 - (1.0 - d2) * s1};
  };
  std::vector<P> ring = {map(0.0, 0.0), map(budget, 0.0), map(0.0, budget)};
  ring = oracle_clip(ring, 1.0, 0.0);
  ring = oracle_clip(ring, 0.0, 1.0);
  return oracle_shoelace(ring);
}

bool boundary_has(const std::vector<Vec2>& ring, double x, double y) {
  for (const Vec2& p : ring) {
    if (std::abs(p.x - x) <= 1e-9 && std::abs(p.y - y) <= 1e-9) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("payoff image keeps feasible grid points in s1 major order") {
  const auto image = payoff_image(canonical_game(1.0, 1.0), 2);
  REQUIRE(image.points.size() == 3);
  CHECK(image.points[0].s1 == 0.0);
  CHECK(image.points[0].s2 == 0.0);
  CHECK(image.points[1].s1 == 0.0);
  CHECK(image.points[1].s2 == 100.0);
  CHECK(image.points[2].s1 == 100.0);
  CHECK(image.points[2].s2 == 0.0);
  for (const CloudPoint& pt : image.points) {
    CHECK(pt.p1 == doctest::Approx(pt.s1));
    CHECK(pt.p2 == doctest::Approx(pt.s2));
  }
  CHECK_THROWS_AS(payoff_image(canonical_game(1.0, 1.0), 1),
                  std::invalid_argument);
}

TEST_CASE("exact areas at the benchmark rationality pairs") {
  CHECK(bargaining_set(canonical_game(1.0, 1.0)).area ==
        doctest::Approx(5000.0).epsilon(1e-9));
  CHECK(bargaining_set(canonical_game(0.5, 0.5)).area ==
        doctest::Approx(1250.0).epsilon(1e-9));
  CHECK(bargaining_set(canonical_game(0.0, 1.0)).area ==
        doctest::Approx(2500.0).epsilon(1e-9));
  CHECK(bargaining_set(canonical_game(0.0, 0.0)).area ==
        doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("exact area matches the independent clipping oracle on a grid") {
  for (double d1 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double d2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CAPTURE(d1);
      CAPTURE(d2);
      const BargainingSet set = bargaining_set(canonical_game(d1, d2), 16);
      REQUIRE(set.exact_area.has_value());
      CHECK(set.area == doctest::Approx(oracle_area(d1, d2))
                            .epsilon(1e-9)
                            .scale(1.0));
    }
  }
}

TEST_CASE("boundary ring at half rationality is the scaled simplex") {
  const BargainingSet set = bargaining_set(canonical_game(0.5, 0.5), 64);
  REQUIRE(set.boundary.size() == 3);
  CHECK(boundary_has(set.boundary, 0.0, 0.0));
  CHECK(boundary_has(set.boundary, 50.0, 0.0));
  CHECK(boundary_has(set.boundary, 0.0, 50.0));
  CHECK_FALSE(set.is_degenerate);
  CHECK_FALSE(set.paper_boundary_claim_mismatch);
}

TEST_CASE("degeneracy and the one sided boundary flag") {
  const BargainingSet both_zero = bargaining_set(canonical_game(0.0, 0.0), 64);
  CHECK(both_zero.is_degenerate);
  CHECK_FALSE(both_zero.paper_boundary_claim_mismatch);

  const BargainingSet left_zero = bargaining_set(canonical_game(0.0, 1.0), 64);
  CHECK_FALSE(left_zero.is_degenerate);
  CHECK(left_zero.paper_boundary_claim_mismatch);
  CHECK(left_zero.area == doctest::Approx(2500.0).epsilon(1e-9));

  const BargainingSet right_zero = bargaining_set(canonical_game(1.0, 0.0), 64);
  CHECK_FALSE(right_zero.is_degenerate);
  CHECK(right_zero.paper_boundary_claim_mismatch);

  const BargainingSet fully_rational =
      bargaining_set(canonical_game(1.0, 1.0), 64);
  CHECK_FALSE(fully_rational.is_degenerate);
  CHECK_FALSE(fully_rational.paper_boundary_claim_mismatch);
}

TEST_CASE("raster estimate tracks the exact area at production resolution") {
  const BargainingSet full = bargaining_set(canonical_game(1.0, 1.0), 400);
  CHECK(full.area_estimate ==
        doctest::Approx(5000.0).epsilon(0.02));

  const BargainingSet half = bargaining_set(canonical_game(0.5, 0.5), 400);
  CHECK(half.area_estimate ==
        doctest::Approx(1250.0).epsilon(0.02));
}

TEST_CASE("area grows with each rationality index") {
  const std::array<double, 4> deltas = {0.25, 0.5, 0.75, 1.0};
  for (double d1 : deltas) {
    double previous = -1.0;
    for (double d2 : deltas) {
      const double area = bargaining_area(canonical_game(d1, d2), 16);
      CHECK(area >= previous - 1e-9);
      previous = area;
    }
  }
  for (double d2 : deltas) {
    double previous = -1.0;
    for (double d1 : deltas) {
      const double area = bargaining_area(canonical_game(d1, d2), 16);
      CHECK(area >= previous - 1e-9);
      previous = area;
    }
  }
}

TEST_CASE("pareto frontier reports payoffs along the efficient allocations") {
  const BargainingSet set = bargaining_set(canonical_game(1.0, 1.0), 3);
  REQUIRE(set.pareto_frontier.size() == 3);
  CHECK(set.pareto_frontier[0].x == doctest::Approx(0.0));
  CHECK(set.pareto_frontier[0].y == doctest::Approx(100.0));
  CHECK(set.pareto_frontier[1].x == doctest::Approx(50.0));
  CHECK(set.pareto_frontier[1].y == doctest::Approx(50.0));
  CHECK(set.pareto_frontier[2].x == doctest::Approx(100.0));
  CHECK(set.pareto_frontier[2].y == doctest::Approx(0.0));
}

TEST_CASE("single point outcome space gives a degenerate singleton set") {
  GameSpec game = canonical_game(1.0, 1.0);
  game.outcome_space = FeasiblePolygon::budget(0.0);
  const BargainingSet set = bargaining_set(game, 16);
  CHECK(set.is_degenerate);
  CHECK(set.area == doctest::Approx(0.0).scale(1.0));
  REQUIRE(set.cloud.points.size() == 1);
  CHECK(set.cloud.points[0].p1 == doctest::Approx(0.0));
}

TEST_CASE("non affine payoffs fall back to the weighted raster estimate") {
  GameSpec game = canonical_game(1.0, 1.0);
  game.player1.rational_value = ValueExpr::parse("s1^2");
  const BargainingSet set = bargaining_set(game, 400);
  CHECK_FALSE(set.exact_area.has_value());
  CHECK(set.boundary.empty());
  CHECK_FALSE(set.is_degenerate);
  CHECK(set.area == set.area_estimate);
  // integral of |2*s1| over the simplex
  CHECK(set.area_estimate == doctest::Approx(1000000.0 / 3.0).epsilon(0.03));
}

TEST_CASE("disagreement point shifts cut deeper into the image") {
  GameSpec game = canonical_game(1.0, 1.0);
  game.disagreement = Disagreement::payoffs(20.0, 30.0);
  const BargainingSet set = bargaining_set(game, 16);
  // Residual budget triangle above (20, 30): side 100 - 20 - 30.
  CHECK(set.area == doctest::Approx(1250.0).epsilon(1e-9));
  for (const CloudPoint& pt : set.cloud.points) {
    CHECK(pt.p1 >= 20.0 - 1e-6);
    CHECK(pt.p2 >= 30.0 - 1e-6);
  }
}
