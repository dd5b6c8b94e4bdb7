#ifndef NASHDELTA_GAME_HPP
#define NASHDELTA_GAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "nashdelta/expr.hpp"
#include "nashdelta/geometry.hpp"

namespace nashdelta {

/// One bargainer: a rational value function U, a distortion value function D
/// and a rationality index delta in [0, 1]. The behavioral payoff is
/// delta * U + (1 - delta) * D.
struct PlayerSpec {
  ValueExpr rational_value;
  ValueExpr distortion_value;
  double delta = 1.0;
};

/// Disagreement point, either given directly in payoff units or as a threat
/// allocation inside the outcome space whose payoffs are evaluated per
/// player.
struct Disagreement {
  enum class Kind { payoffs, threats };

  Kind kind = Kind::payoffs;
  Vec2 value{0.0, 0.0};

  static Disagreement payoffs(double d1, double d2) {
    return {Kind::payoffs, {d1, d2}};
  }
  static Disagreement threats(double t1, double t2) {
    return {Kind::threats, {t1, t2}};
  }
};

struct GameSpec {
  PlayerSpec player1;
  PlayerSpec player2;
  FeasiblePolygon outcome_space{std::vector<LinearConstraint>{}};
  Disagreement disagreement = Disagreement::payoffs(0.0, 0.0);
};

double payoff(const PlayerSpec& player, double s1, double s2);

/// (p1, p2) at the allocation (s1, s2).
Vec2 payoff_pair(const GameSpec& game, double s1, double s2);

/// Disagreement payoffs (d1, d2); evaluates threat allocations when needed.
Vec2 resolve_disagreement(const GameSpec& game);

struct ValidationIssue {
  std::string code;    // stable machine readable tag
  std::string detail;  // human readable explanation
};

/// All problems found, empty when the game is well posed. Codes:
/// delta_out_of_range, polygon_empty, polygon_unbounded,
/// threat_outside_outcome_space, expr_invalid.
std::vector<ValidationIssue> validate_game(const GameSpec& game);

class GameValidationError : public std::runtime_error {
 public:
  GameValidationError(std::string message, std::vector<ValidationIssue> issues)
      : std::runtime_error(std::move(message)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

void require_valid(const GameSpec& game);

/// Behavioral payoffs when both are affine in (s1, s2).
struct AffinePayoffs {
  AffineForm p1;
  AffineForm p2;
};

/// Affine payoff maps, available when both players' value functions are
/// structurally affine. The extraction is cross-checked numerically at a
/// deterministic sample of feasible points before being trusted.
std::optional<AffinePayoffs> affine_payoffs(const GameSpec& game);

}  // namespace nashdelta

#endif
