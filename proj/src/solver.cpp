#include "nashdelta/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nashdelta {

namespace {

struct Candidate {
  Vec2 s;
  double product;
  double margin1;  // p1 - d1
  double margin2;  // p2 - d2
};

// Smaller product loses; near ties resolve toward the lexicographically
// smaller allocation so symmetric games pick a deterministic optimum.
bool candidate_improves(const Candidate& incumbent, const Candidate& challenger) {
  const double tie =
      1e-12 * std::max({1.0, std::abs(incumbent.product),
                        std::abs(challenger.product)});
  if (challenger.product > incumbent.product + tie) return true;
  if (challenger.product < incumbent.product - tie) return false;
  if (challenger.s.x != incumbent.s.x) return challenger.s.x < incumbent.s.x;
  return challenger.s.y < incumbent.s.y;
}

struct Accumulator {
  std::optional<Candidate> best;
  double max_margin1 = -std::numeric_limits<double>::infinity();
  double max_margin2 = -std::numeric_limits<double>::infinity();
  bool any = false;

  void add(const Candidate& c) {
    any = true;
    max_margin1 = std::max(max_margin1, c.margin1);
    max_margin2 = std::max(max_margin2, c.margin2);
    if (!best || candidate_improves(*best, c)) best = c;
  }
};

Solution classify(const GameSpec& game, const Accumulator& acc, const Vec2& d,
                  double eps, const char* method) {
  Solution sol;
  sol.disagreement = d;
  sol.diagnostics.method = method;

  const bool one_zero =
      (game.player1.delta == 0.0) != (game.player2.delta == 0.0);

  if (acc.best && acc.best->product > eps * eps) {
    sol.status = SolveStatus::agreement;
    const Vec2 s = acc.best->s;
    sol.s_star = s;
    sol.p_star = payoff_pair(game, s.x, s.y);
    sol.u_star = Vec2{game.player1.rational_value.eval(s.x, s.y),
                      game.player2.rational_value.eval(s.x, s.y)};
    sol.nash_product = (sol.p_star.x - d.x) * (sol.p_star.y - d.y);
    sol.diagnostics.paper_boundary_claim_mismatch = one_zero;
    return sol;
  }

  sol.p_star = d;
  sol.nash_product = 0.0;
  if (acc.any && acc.max_margin1 <= eps && acc.max_margin2 <= eps) {
    sol.status = SolveStatus::degenerate;
  } else {
    sol.status = SolveStatus::disagreement;
  }
  return sol;
}

// Exact path: with affine payoff maps the product restricted to any edge of
// the outcome polygon is a quadratic in the edge parameter, and a positive
// maximum always lies on the polygon boundary (interior stationary points
// are ridges whose value is also attained on an edge). Enumerating every
// edge, clipped to the admissible band, is therefore exhaustive.
Solution solve_affine(const GameSpec& game, const AffinePayoffs& aff,
                      const Vec2& d, double eps) {
  const auto& vs = game.outcome_space.vertices();
  Accumulator acc;

  const auto consider = [&](const Vec2& s) {
    const double m1 = aff.p1.eval(s.x, s.y) - d.x;
    const double m2 = aff.p2.eval(s.x, s.y) - d.y;
    if (m1 < -eps || m2 < -eps) return;
    acc.add({s, m1 * m2, m1, m2});
  };

  if (vs.size() == 1) {
    consider(vs[0]);
    return classify(game, acc, d, eps, "affine_exact");
  }

  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % vs.size()];

    const double alpha1 = aff.p1.eval(a.x, a.y) - d.x;
    const double alpha2 = aff.p2.eval(a.x, a.y) - d.y;
    const double beta1 = aff.p1.eval(b.x, b.y) - d.x - alpha1;
    const double beta2 = aff.p2.eval(b.x, b.y) - d.y - alpha2;

    // Intersect [0, 1] with both admissibility bands alpha + beta*t >= -eps.
    double t_lo = 0.0, t_hi = 1.0;
    bool empty = false;
    const auto clip = [&](double alpha, double beta) {
      if (beta > 0.0) {
        t_lo = std::max(t_lo, (-eps - alpha) / beta);
      } else if (beta < 0.0) {
        t_hi = std::min(t_hi, (-eps - alpha) / beta);
      } else if (alpha < -eps) {
        empty = true;
      }
    };
    clip(alpha1, beta1);
    clip(alpha2, beta2);
    if (empty || t_lo > t_hi) continue;

    const auto at = [&](double t) {
      return Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    };
    consider(at(t_lo));
    consider(at(t_hi));
    if (beta1 * beta2 != 0.0) {
      const double t_star = -(alpha1 * beta2 + alpha2 * beta1) /
                            (2.0 * beta1 * beta2);
      if (t_star > t_lo && t_star < t_hi) consider(at(t_star));
    }
  }
  return classify(game, acc, d, eps, "affine_exact");
}

Solution solve_grid(const GameSpec& game, const Vec2& d, double eps,
                    const SolverOptions& options) {
  Vec2 lo, hi;
  game.outcome_space.bounding_box(lo, hi);
  const int res = options.grid_resolution;
  const double dx =
      hi.x > lo.x ? (hi.x - lo.x) / static_cast<double>(res - 1) : 0.0;
  const double dy =
      hi.y > lo.y ? (hi.y - lo.y) / static_cast<double>(res - 1) : 0.0;

  Accumulator acc;
  const auto consider = [&](const Vec2& s) -> bool {
    if (!game.outcome_space.contains(s.x, s.y)) return false;
    const Vec2 p = payoff_pair(game, s.x, s.y);
    const double m1 = p.x - d.x;
    const double m2 = p.y - d.y;
    if (m1 < -eps || m2 < -eps) return false;
    acc.add({s, m1 * m2, m1, m2});
    return true;
  };

  const int nx = dx > 0.0 ? res : 1;
  const int ny = dy > 0.0 ? res : 1;
  for (int i = 0; i < nx; ++i) {
    const double s1 = nx == 1 ? lo.x : lo.x + (hi.x - lo.x) * i / double(nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double s2 =
          ny == 1 ? lo.y : lo.y + (hi.y - lo.y) * j / double(ny - 1);
      consider({s1, s2});
    }
  }

  Solution sol = classify(game, acc, d, eps, "grid_refine");
  if (sol.status != SolveStatus::agreement) return sol;

  // Compass search from the best cell, halving the step whenever no axis
  // move improves the product.
  Candidate cur = *acc.best;
  double step = std::max(dx, dy);
  const double target = options.refinement_tolerance *
                        game.outcome_space.scale();
  int iter = 0;
  while (step > target && iter < options.max_refinement_steps) {
    ++iter;
    Candidate best_move = cur;
    bool moved = false;
    // Diagonal moves let the search slide along a binding constraint edge,
    // where pure axis moves stall.
    const Vec2 moves[8] = {{cur.s.x + step, cur.s.y},
                           {cur.s.x - step, cur.s.y},
                           {cur.s.x, cur.s.y + step},
                           {cur.s.x, cur.s.y - step},
                           {cur.s.x + step, cur.s.y + step},
                           {cur.s.x + step, cur.s.y - step},
                           {cur.s.x - step, cur.s.y + step},
                           {cur.s.x - step, cur.s.y - step}};
    for (const Vec2& m : moves) {
      if (!game.outcome_space.contains(m.x, m.y)) continue;
      const Vec2 p = payoff_pair(game, m.x, m.y);
      const double m1 = p.x - d.x;
      const double m2 = p.y - d.y;
      if (m1 < -eps || m2 < -eps) continue;
      const Candidate cand{m, m1 * m2, m1, m2};
      // Strict improvement only: the tie band that picks among raster
      // candidates would let the walk creep sideways across the flat top
      // of the product and eat the whole step budget.
      if (cand.product > best_move.product) {
        best_move = cand;
        moved = true;
      }
    }
    if (moved) {
      cur = best_move;
    } else {
      step /= 2.0;
    }
  }
  sol.diagnostics.refinement_steps = iter;
  sol.diagnostics.budget_exhausted = step > target;

  sol.s_star = cur.s;
  sol.p_star = payoff_pair(game, cur.s.x, cur.s.y);
  sol.u_star = Vec2{game.player1.rational_value.eval(cur.s.x, cur.s.y),
                    game.player2.rational_value.eval(cur.s.x, cur.s.y)};
  sol.nash_product =
      (sol.p_star.x - d.x) * (sol.p_star.y - d.y);
  return sol;
}

}  // namespace

double nash_product(const GameSpec& game, double s1, double s2) {
  const Vec2 d = resolve_disagreement(game);
  const Vec2 p = payoff_pair(game, s1, s2);
  return (p.x - d.x) * (p.y - d.y);
}

Solution solve(const GameSpec& game, const SolverOptions& options) {
  require_valid(game);
  if (options.grid_resolution < 16) {
    throw std::invalid_argument("grid_resolution must be at least 16");
  }
  const Vec2 d = resolve_disagreement(game);
  const double eps = 1e-9 * game.outcome_space.scale();

  Solution sol;
  if (options.affine_fast_path) {
    if (const auto aff = affine_payoffs(game)) {
      sol = solve_affine(game, *aff, d, eps);
      sol.diagnostics.stationarity_residual = stationarity_residual(game, sol);
      return sol;
    }
  }
  sol = solve_grid(game, d, eps, options);
  sol.diagnostics.stationarity_residual = stationarity_residual(game, sol);
  return sol;
}

Solution closed_form_example(double delta1, double delta2, double budget) {
  if (!(delta1 > 0.0 && delta1 <= 1.0) || !(delta2 > 0.0 && delta2 <= 1.0)) {
    throw std::domain_error(
        "closed_form_example requires rationality indices in (0, 1]");
  }
  if (!(budget > 0.0)) {
    throw std::domain_error("closed_form_example requires a positive budget");
  }

  const double m = budget;
  const double a = delta1 + delta2 - delta1 * delta2;
  const double p1 = (m / 2.0) * a / (2.0 - delta2);
  const double p2 = (m / 2.0) * a / (2.0 - delta1);
  const double shared = (m / 2.0) * a / ((2.0 - delta1) * (2.0 - delta2));
  const double s1 = m * (1.0 - delta1) / (2.0 - delta1) + shared;
  const double s2 = m * (1.0 - delta2) / (2.0 - delta2) + shared;

  Solution sol;
  sol.s_star = Vec2{s1, s2};
  sol.p_star = {p1, p2};
  sol.u_star = Vec2{s1, s2};
  sol.disagreement = {0.0, 0.0};
  sol.nash_product = p1 * p2;
  sol.status = SolveStatus::agreement;
  sol.diagnostics.method = "closed_form";
  return sol;
}

std::optional<double> stationarity_residual(const GameSpec& game,
                                            const Solution& solution) {
  if (!solution.s_star) return std::nullopt;
  const Vec2 s = *solution.s_star;
  const Vec2 d = solution.disagreement;
  const double scale = game.outcome_space.scale();
  const double eps = 1e-9 * scale;

  const Vec2 p = payoff_pair(game, s.x, s.y);
  if ((p.x - d.x) * (p.y - d.y) <= eps * eps) return std::nullopt;

  const auto log_product = [&](double s1, double s2) {
    const Vec2 q = payoff_pair(game, s1, s2);
    return std::log((q.x - d.x) * (q.y - d.y));
  };
  const double h = 1e-5 * scale;

  // Which edges pass through the solution?
  std::vector<Vec2> directions;
  const double on_edge_tol = 1e-6 * scale;
  for (const auto& c : game.outcome_space.constraints()) {
    const double norm = std::hypot(c.a1, c.a2);
    if (norm == 0.0) continue;
    if (std::abs(c.slack(s.x, s.y)) / norm <= on_edge_tol) {
      directions.push_back({-c.a2 / norm, c.a1 / norm});
    }
  }
  if (directions.size() >= 2) return std::nullopt;  // vertex

  double residual;
  if (directions.size() == 1) {
    const Vec2 dir = directions[0];
    const double fwd = log_product(s.x + h * dir.x, s.y + h * dir.y);
    const double bwd = log_product(s.x - h * dir.x, s.y - h * dir.y);
    residual = std::abs((fwd - bwd) / (2.0 * h));
  } else {
    // Interior point: report the gradient norm of the log product.
    const double gx =
        (log_product(s.x + h, s.y) - log_product(s.x - h, s.y)) / (2.0 * h);
    const double gy =
        (log_product(s.x, s.y + h) - log_product(s.x, s.y - h)) / (2.0 * h);
    residual = std::hypot(gx, gy);
  }
  // The probe points can leave the admissible region near its boundary,
  // where the log is undefined.
  if (!std::isfinite(residual)) return std::nullopt;
  return residual;
}

}  // namespace nashdelta
