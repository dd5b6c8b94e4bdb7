#include "nashdelta/game.hpp"

#include <cmath>
#include <sstream>

#include "nashdelta/rng.hpp"

namespace nashdelta {

double payoff(const PlayerSpec& player, double s1, double s2) {
  const double u = player.rational_value.eval(s1, s2);
  const double d = player.distortion_value.eval(s1, s2);
  return player.delta * u + (1.0 - player.delta) * d;
}

Vec2 payoff_pair(const GameSpec& game, double s1, double s2) {
  return {payoff(game.player1, s1, s2), payoff(game.player2, s1, s2)};
}

Vec2 resolve_disagreement(const GameSpec& game) {
  if (game.disagreement.kind == Disagreement::Kind::payoffs) {
    return game.disagreement.value;
  }
  const Vec2 t = game.disagreement.value;
  return payoff_pair(game, t.x, t.y);
}

std::vector<ValidationIssue> validate_game(const GameSpec& game) {
  std::vector<ValidationIssue> issues;

  const auto check_player = [&](const PlayerSpec& p, int index) {
    std::ostringstream who;
    who << "player " << index;
    if (!p.rational_value.valid()) {
      issues.push_back({"expr_invalid",
                        who.str() + ": rational value function is unset"});
    }
    if (!p.distortion_value.valid()) {
      issues.push_back({"expr_invalid",
                        who.str() + ": distortion value function is unset"});
    }
    if (!(p.delta >= 0.0 && p.delta <= 1.0)) {
      std::ostringstream msg;
      msg << who.str() << ": delta " << p.delta << " outside [0, 1]";
      issues.push_back({"delta_out_of_range", msg.str()});
    }
  };
  check_player(game.player1, 1);
  check_player(game.player2, 2);

  switch (game.outcome_space.status()) {
    case FeasiblePolygon::Status::ok:
      break;
    case FeasiblePolygon::Status::empty:
      issues.push_back({"polygon_empty", "outcome space has no feasible point"});
      break;
    case FeasiblePolygon::Status::unbounded:
      issues.push_back({"polygon_unbounded", "outcome space is unbounded"});
      break;
  }

  if (game.disagreement.kind == Disagreement::Kind::threats &&
      game.outcome_space.ok() &&
      !game.outcome_space.contains(game.disagreement.value.x,
                                   game.disagreement.value.y)) {
    std::ostringstream msg;
    msg << "threat allocation (" << game.disagreement.value.x << ", "
        << game.disagreement.value.y << ") lies outside the outcome space";
    issues.push_back({"threat_outside_outcome_space", msg.str()});
  }

  return issues;
}

void require_valid(const GameSpec& game) {
  auto issues = validate_game(game);
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid game:";
  for (const auto& issue : issues) {
    msg << " [" << issue.code << "] " << issue.detail << ";";
  }
  throw GameValidationError(msg.str(), std::move(issues));
}

std::optional<AffinePayoffs> affine_payoffs(const GameSpec& game) {
  const auto u1 = affine_form(game.player1.rational_value);
  const auto d1 = affine_form(game.player1.distortion_value);
  const auto u2 = affine_form(game.player2.rational_value);
  const auto d2 = affine_form(game.player2.distortion_value);
  if (!u1 || !d1 || !u2 || !d2) return std::nullopt;

  const auto blend = [](const AffineForm& u, const AffineForm& d,
                        double delta) {
    return AffineForm{delta * u.c0 + (1.0 - delta) * d.c0,
                      delta * u.c1 + (1.0 - delta) * d.c1,
                      delta * u.c2 + (1.0 - delta) * d.c2};
  };
  AffinePayoffs result{blend(*u1, *d1, game.player1.delta),
                       blend(*u2, *d2, game.player2.delta)};

  // Confirm the extracted coefficients against the expression trees at a
  // deterministic spread of feasible points. This guards the closed form
  // path against extraction bugs rather than against the math.
  if (game.outcome_space.ok()) {
    const auto& vs = game.outcome_space.vertices();
    RandomStream probe(0x5eedu, 0);
    for (int k = 0; k < 20; ++k) {
      double wsum = 0.0;
      Vec2 point{0.0, 0.0};
      for (const Vec2& v : vs) {
        const double w = probe.next_unit() + 1e-3;
        wsum += w;
        point.x += w * v.x;
        point.y += w * v.y;
      }
      point.x /= wsum;
      point.y /= wsum;
      const Vec2 direct = payoff_pair(game, point.x, point.y);
      const double tol =
          1e-9 * std::max({1.0, std::abs(direct.x), std::abs(direct.y)});
      if (std::abs(result.p1.eval(point.x, point.y) - direct.x) > tol ||
          std::abs(result.p2.eval(point.x, point.y) - direct.y) > tol) {
        return std::nullopt;
      }
    }
  }
  return result;
}

}  // namespace nashdelta
