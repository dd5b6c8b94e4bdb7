#ifndef NASHDELTA_CSV_HPP
#define NASHDELTA_CSV_HPP

#include <string>

#include "nashdelta/analysis.hpp"
#include "nashdelta/bargaining.hpp"

namespace nashdelta {

/// Locale independent number formatting with 9 significant digits, the one
/// representation every CSV writer here uses. Negative zero prints as "0".
std::string format_g9(double value);

const char* solve_status_name(SolveStatus status);

/// delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,
/// nash_product,status. Unset allocations leave their fields empty.
std::string solution_csv(double delta1, double delta2, const Solution& sol);

/// Same columns as solution_csv with bargaining_area in place of
/// nash_product, one row per sweep cell.
std::string sweep_csv(const SweepTable& table);

/// index,delta1,delta2,... rows followed by a '#' prefixed summary block
/// with per quantity statistics, the disagreement rate, failure count,
/// sample count and seed.
std::string monte_carlo_csv(const MonteCarloReport& report);

/// s1,s2,p1,p2 membership rows followed by '#' lines for area, the raster
/// area estimate, degeneracy and the boundary claim flag.
std::string bargaining_csv(const BargainingSet& set);

/// t_payoff1,t_payoff2,q1,q2,compatible,final1,final2.
std::string transcript_csv(const DemandGameTranscript& transcript);

/// player,behavioral_payoff,rational_value,distortion_value,
/// decomposition_residual,welfare_gap; one row per player.
std::string welfare_csv(const WelfareReport& report);

}  // namespace nashdelta

#endif
