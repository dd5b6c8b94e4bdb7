#include "nashdelta/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nashdelta/bargaining.hpp"

namespace nashdelta {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Marsaglia and Tsang's squeeze method; needs shape >= 1, the caller boosts
// smaller shapes.
double gamma_at_least_one(double shape, RandomStream& stream) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double gamma_draw(double shape, RandomStream& stream) {
  if (shape >= 1.0) return gamma_at_least_one(shape, stream);
  const double g = gamma_at_least_one(shape + 1.0, stream);
  double u = stream.next_unit();
  if (u <= 0.0) u = 0x1.0p-53;
  return g * std::pow(u, 1.0 / shape);
}

}  // namespace

std::string validate_distribution(const DeltaDistribution& dist) {
  std::ostringstream msg;
  switch (dist.kind) {
    case DeltaDistribution::Kind::point:
      if (!(dist.a >= 0.0 && dist.a <= 1.0)) {
        msg << "point value " << dist.a << " outside [0, 1]";
      }
      break;
    case DeltaDistribution::Kind::uniform:
      if (!(dist.a >= 0.0 && dist.b <= 1.0 && dist.a <= dist.b)) {
        msg << "uniform bounds [" << dist.a << ", " << dist.b
            << "] must satisfy 0 <= a <= b <= 1";
      }
      break;
    case DeltaDistribution::Kind::truncated_gaussian:
      if (!(dist.b > 0.0)) {
        msg << "truncated gaussian needs sigma > 0, got " << dist.b;
      }
      break;
    case DeltaDistribution::Kind::beta:
      if (!(dist.a > 0.0 && dist.b > 0.0)) {
        msg << "beta needs alpha > 0 and beta > 0, got (" << dist.a << ", "
            << dist.b << ")";
      }
      break;
  }
  return msg.str();
}

double sample_delta(const DeltaDistribution& dist, RandomStream& stream) {
  switch (dist.kind) {
    case DeltaDistribution::Kind::point:
      return dist.a;
    case DeltaDistribution::Kind::uniform:
      return dist.a + (dist.b - dist.a) * stream.next_unit();
    case DeltaDistribution::Kind::truncated_gaussian: {
      // Inverse transform through the truncated CDF on [0, 1].
      const double mu = dist.a, sigma = dist.b;
      const double lo = normal_cdf((0.0 - mu) / sigma);
      const double hi = normal_cdf((1.0 - mu) / sigma);
      if (!(hi - lo > 1e-300)) {
        // The window carries no mass numerically; collapse to the nearest
        // endpoint of [0, 1].
        return clamp01(mu);
      }
      const double u = stream.next_unit();
      const double p = lo + u * (hi - lo);
      if (p <= 0.0) return 0.0;
      if (p >= 1.0) return 1.0;
      return clamp01(mu + sigma * normal_quantile(p));
    }
    case DeltaDistribution::Kind::beta: {
      const double x = gamma_draw(dist.a, stream);
      const double y = gamma_draw(dist.b, stream);
      return clamp01(x / (x + y));
    }
  }
  return dist.a;  // unreachable
}

GameSpec GameTemplate::instantiate(double delta1, double delta2) const {
  GameSpec game;
  game.player1 = {player1.rational_value, player1.distortion_value, delta1};
  game.player2 = {player2.rational_value, player2.distortion_value, delta2};
  game.outcome_space = outcome_space;
  game.disagreement = disagreement;
  return game;
}

GameTemplate GameTemplate::split_budget(double budget) {
  GameTemplate t;
  t.player1 = {ValueExpr::parse("s1"), ValueExpr::parse("s1 - s2")};
  t.player2 = {ValueExpr::parse("s2"), ValueExpr::parse("s2 - s1")};
  t.outcome_space = FeasiblePolygon::budget(budget);
  t.disagreement = Disagreement::payoffs(0.0, 0.0);
  return t;
}

const char* row_status_name(RowStatus status) {
  switch (status) {
    case RowStatus::agreement: return "agreement";
    case RowStatus::disagreement: return "disagreement";
    case RowStatus::degenerate: return "degenerate";
    case RowStatus::failed: return "failed";
  }
  return "failed";
}

namespace {

RowStatus row_status_of(SolveStatus status) {
  switch (status) {
    case SolveStatus::agreement: return RowStatus::agreement;
    case SolveStatus::disagreement: return RowStatus::disagreement;
    case SolveStatus::degenerate: return RowStatus::degenerate;
  }
  return RowStatus::failed;
}

SweepRow solve_sweep_cell(const GameTemplate& game, double d1, double d2,
                          const SolverOptions& options) {
  SweepRow row;
  row.delta1 = d1;
  row.delta2 = d2;
  try {
    const GameSpec spec = game.instantiate(d1, d2);
    const Solution sol = solve(spec, options);
    row.status = row_status_of(sol.status);
    row.p1_star = sol.p_star.x;
    row.p2_star = sol.p_star.y;
    if (sol.s_star) {
      row.s1_star = sol.s_star->x;
      row.s2_star = sol.s_star->y;
    }
    if (sol.u_star) {
      row.u1_star = sol.u_star->x;
      row.u2_star = sol.u_star->y;
    }
    row.bargaining_area = bargaining_area(spec, options.grid_resolution);
  } catch (const std::exception&) {
    row.status = RowStatus::failed;
  }
  return row;
}

}  // namespace

SweepTable sweep_grid(const GameTemplate& game, std::span<const double> delta1,
                      std::span<const double> delta2,
                      const SolverOptions& options) {
  SweepTable table;
  table.rows.reserve(delta1.size() * delta2.size());
  for (double d1 : delta1) {
    for (double d2 : delta2) {
      table.rows.push_back(solve_sweep_cell(game, d1, d2, options));
    }
  }
  return table;
}

SweepTable sweep_constant(const GameTemplate& game,
                          std::span<const double> delta,
                          const SolverOptions& options) {
  SweepTable table;
  table.rows.reserve(delta.size());
  for (double d : delta) {
    table.rows.push_back(solve_sweep_cell(game, d, d, options));
  }
  return table;
}

namespace {

QuantitySummary summarize(const std::string& name,
                          std::vector<double> values) {
  QuantitySummary s;
  s.name = name;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());

  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }

  std::sort(values.begin(), values.end());
  const auto quantile = [&](double p) {
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t k = static_cast<std::size_t>(std::floor(h));
    if (k + 1 >= values.size()) return values.back();
    return values[k] + (h - static_cast<double>(k)) * (values[k + 1] - values[k]);
  };
  s.q05 = quantile(0.05);
  s.q25 = quantile(0.25);
  s.q50 = quantile(0.50);
  s.q75 = quantile(0.75);
  s.q95 = quantile(0.95);
  return s;
}

}  // namespace

MonteCarloReport monte_carlo(const GameTemplate& game,
                             const DeltaDistribution& delta1,
                             const DeltaDistribution& delta2, int samples,
                             std::uint64_t seed,
                             const SolverOptions& options) {
  if (samples < 1) {
    throw std::invalid_argument("monte_carlo needs at least one sample");
  }
  for (const auto* dist : {&delta1, &delta2}) {
    const std::string issue = validate_distribution(*dist);
    if (!issue.empty()) {
      throw std::invalid_argument("bad rationality distribution: " + issue);
    }
  }

  MonteCarloReport report;
  report.sample_count = samples;
  report.seed = seed;
  report.rows.reserve(static_cast<std::size_t>(samples));

  int solved = 0;
  int non_agreement = 0;
  for (int i = 0; i < samples; ++i) {
    RandomStream s1(seed, 2 * static_cast<std::uint64_t>(i));
    RandomStream s2(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    McRow row;
    row.index = i;
    row.delta1 = sample_delta(delta1, s1);
    row.delta2 = sample_delta(delta2, s2);
    try {
      const Solution sol = solve(game.instantiate(row.delta1, row.delta2),
                                 options);
      row.status = row_status_of(sol.status);
      row.p1_star = sol.p_star.x;
      row.p2_star = sol.p_star.y;
      if (sol.s_star) {
        row.s1_star = sol.s_star->x;
        row.s2_star = sol.s_star->y;
      }
      if (sol.u_star) {
        row.u1_star = sol.u_star->x;
        row.u2_star = sol.u_star->y;
      }
      ++solved;
      if (sol.status != SolveStatus::agreement) ++non_agreement;
    } catch (const std::exception&) {
      row.status = RowStatus::failed;
      ++report.failed_count;
    }
    report.rows.push_back(std::move(row));
  }
  report.disagreement_rate =
      solved > 0 ? static_cast<double>(non_agreement) / solved : 0.0;

  const auto collect = [&](const std::string& name, auto getter) {
    std::vector<double> values;
    values.reserve(report.rows.size());
    for (const McRow& row : report.rows) {
      if (auto v = getter(row)) values.push_back(*v);
    }
    report.summaries.push_back(summarize(name, std::move(values)));
  };
  collect("delta1", [](const McRow& r) -> std::optional<double> {
    return r.delta1;
  });
  collect("delta2", [](const McRow& r) -> std::optional<double> {
    return r.delta2;
  });
  collect("s1_star", [](const McRow& r) { return r.s1_star; });
  collect("s2_star", [](const McRow& r) { return r.s2_star; });
  collect("p1_star", [](const McRow& r) { return r.p1_star; });
  collect("p2_star", [](const McRow& r) { return r.p2_star; });
  return report;
}

namespace {

// Rational and distortion values actually realized by a solution: at the
// agreed allocation, else at the threat allocation, else the disagreement
// payoffs themselves stand in for both components.
void realized_values(const GameSpec& game, const Solution& sol, Vec2& u,
                     Vec2& d_vals) {
  if (sol.s_star) {
    const Vec2 s = *sol.s_star;
    u = {game.player1.rational_value.eval(s.x, s.y),
         game.player2.rational_value.eval(s.x, s.y)};
    d_vals = {game.player1.distortion_value.eval(s.x, s.y),
              game.player2.distortion_value.eval(s.x, s.y)};
    return;
  }
  if (game.disagreement.kind == Disagreement::Kind::threats) {
    const Vec2 t = game.disagreement.value;
    u = {game.player1.rational_value.eval(t.x, t.y),
         game.player2.rational_value.eval(t.x, t.y)};
    d_vals = {game.player1.distortion_value.eval(t.x, t.y),
              game.player2.distortion_value.eval(t.x, t.y)};
    return;
  }
  u = game.disagreement.value;
  d_vals = game.disagreement.value;
}

}  // namespace

WelfareReport welfare_report(const GameSpec& game, const Solution& solution,
                             const SolverOptions& options) {
  Vec2 u, d_vals;
  realized_values(game, solution, u, d_vals);

  GameSpec benchmark = game;
  benchmark.player1.delta = 1.0;
  benchmark.player2.delta = 1.0;
  const Solution bench_sol = solve(benchmark, options);
  Vec2 bench_u, bench_d;
  realized_values(benchmark, bench_sol, bench_u, bench_d);

  const auto fill = [](double p, double uv, double dv, double delta,
                       double bench) {
    WelfareReport::PerPlayer out;
    out.behavioral_payoff = p;
    out.rational_value = uv;
    out.distortion_value = dv;
    out.decomposition_residual =
        std::abs(p - (delta * uv + (1.0 - delta) * dv));
    out.welfare_gap = bench - uv;
    return out;
  };
  WelfareReport report;
  report.player1 = fill(solution.p_star.x, u.x, d_vals.x, game.player1.delta,
                        bench_u.x);
  report.player2 = fill(solution.p_star.y, u.y, d_vals.y, game.player2.delta,
                        bench_u.y);
  return report;
}

}  // namespace nashdelta
