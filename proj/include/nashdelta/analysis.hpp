#ifndef NASHDELTA_ANALYSIS_HPP
#define NASHDELTA_ANALYSIS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nashdelta/demand.hpp"
#include "nashdelta/rng.hpp"
#include "nashdelta/solver.hpp"

namespace nashdelta {

/// Sampling law for a rationality index. All draws land in [0, 1]; the
/// gaussian is truncated to that interval rather than clipped.
struct DeltaDistribution {
  enum class Kind { point, uniform, truncated_gaussian, beta };

  Kind kind = Kind::point;
  double a = 1.0;  // point value / lower bound / mu / alpha
  double b = 0.0;  // upper bound / sigma / beta

  static DeltaDistribution point(double value) {
    return {Kind::point, value, 0.0};
  }
  static DeltaDistribution uniform(double lo, double hi) {
    return {Kind::uniform, lo, hi};
  }
  static DeltaDistribution truncated_gaussian(double mu, double sigma) {
    return {Kind::truncated_gaussian, mu, sigma};
  }
  static DeltaDistribution beta(double alpha, double beta) {
    return {Kind::beta, alpha, beta};
  }
};

/// Empty string when the parameters are admissible, otherwise a complaint.
std::string validate_distribution(const DeltaDistribution& dist);

double sample_delta(const DeltaDistribution& dist, RandomStream& stream);

/// A game with the rationality indices left open.
struct PlayerTemplate {
  ValueExpr rational_value;
  ValueExpr distortion_value;
};

struct GameTemplate {
  PlayerTemplate player1;
  PlayerTemplate player2;
  FeasiblePolygon outcome_space{std::vector<LinearConstraint>{}};
  Disagreement disagreement = Disagreement::payoffs(0.0, 0.0);

  GameSpec instantiate(double delta1, double delta2) const;

  /// The canonical split-the-budget game: U1 = s1, U2 = s2, D1 = s1 - s2,
  /// D2 = s2 - s1 over the budget simplex with disagreement payoffs (0, 0).
  static GameTemplate split_budget(double budget);
};

enum class RowStatus { agreement, disagreement, degenerate, failed };

const char* row_status_name(RowStatus status);

/// One solved cell of a sweep. optional fields stay empty when the solve
/// did not produce them (no agreement, or the row failed outright).
struct SweepRow {
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::optional<double> s1_star, s2_star;
  std::optional<double> p1_star, p2_star;
  std::optional<double> u1_star, u2_star;
  std::optional<double> bargaining_area;
  RowStatus status = RowStatus::failed;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Solve the cartesian product of the two index lists, delta1 in the outer
/// loop. A row that throws is marked failed and the sweep continues.
SweepTable sweep_grid(const GameTemplate& game, std::span<const double> delta1,
                      std::span<const double> delta2,
                      const SolverOptions& options = {});

/// Diagonal sweep with delta1 = delta2.
SweepTable sweep_constant(const GameTemplate& game,
                          std::span<const double> delta,
                          const SolverOptions& options = {});

struct McRow {
  int index = 0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::optional<double> s1_star, s2_star;
  std::optional<double> p1_star, p2_star;
  std::optional<double> u1_star, u2_star;
  RowStatus status = RowStatus::failed;
};

/// Moments and type-7 quantiles of one sampled quantity, over the rows
/// where it is present.
struct QuantitySummary {
  std::string name;
  int count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

struct MonteCarloReport {
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<McRow> rows;
  std::vector<QuantitySummary> summaries;

  /// Share of successfully solved games that ended without an agreement.
  double disagreement_rate = 0.0;
  int failed_count = 0;
};

/// Draw (delta1, delta2) pairs and solve each instance. Sample i uses
/// dedicated substreams (seed, 2i) and (seed, 2i + 1), so the report is a
/// pure function of (seed, n) regardless of how many draws each
/// distribution consumes.
MonteCarloReport monte_carlo(const GameTemplate& game,
                             const DeltaDistribution& delta1,
                             const DeltaDistribution& delta2, int samples,
                             std::uint64_t seed,
                             const SolverOptions& options = {});

/// How much rational value the distortion costs each player: the solved
/// game is compared against the same game replayed with both rationality
/// indices at 1.
struct WelfareReport {
  struct PerPlayer {
    double behavioral_payoff = 0.0;
    double rational_value = 0.0;
    double distortion_value = 0.0;

    /// |p - (delta u + (1 - delta) d)| at the realized outcome.
    double decomposition_residual = 0.0;

    /// Rational value under full rationality minus realized rational value.
    double welfare_gap = 0.0;
  };

  PerPlayer player1;
  PerPlayer player2;
};

WelfareReport welfare_report(const GameSpec& game, const Solution& solution,
                             const SolverOptions& options = {});

}  // namespace nashdelta

#endif
