#include "nashdelta/csv.hpp"

#include <charconv>
#include <sstream>

namespace nashdelta {

std::string format_g9(double value) {
  if (value == 0.0) return "0";  // fold -0 into 0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::agreement: return "agreement";
    case SolveStatus::disagreement: return "disagreement";
    case SolveStatus::degenerate: return "degenerate";
  }
  return "disagreement";
}

namespace {

std::string opt_g9(const std::optional<double>& v) {
  return v ? format_g9(*v) : std::string();
}

const char* bool_name(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string solution_csv(double delta1, double delta2, const Solution& sol) {
  std::ostringstream out;
  out << "delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,"
         "nash_product,status\n";
  out << format_g9(delta1) << ',' << format_g9(delta2) << ','
      << (sol.s_star ? format_g9(sol.s_star->x) : "") << ','
      << (sol.s_star ? format_g9(sol.s_star->y) : "") << ','
      << format_g9(sol.p_star.x) << ',' << format_g9(sol.p_star.y) << ','
      << (sol.u_star ? format_g9(sol.u_star->x) : "") << ','
      << (sol.u_star ? format_g9(sol.u_star->y) : "") << ','
      << format_g9(sol.nash_product) << ',' << solve_status_name(sol.status)
      << '\n';
  return out.str();
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,u2_star,"
         "bargaining_area,status\n";
  for (const SweepRow& row : table.rows) {
    out << format_g9(row.delta1) << ',' << format_g9(row.delta2) << ','
        << opt_g9(row.s1_star) << ',' << opt_g9(row.s2_star) << ','
        << opt_g9(row.p1_star) << ',' << opt_g9(row.p2_star) << ','
        << opt_g9(row.u1_star) << ',' << opt_g9(row.u2_star) << ','
        << opt_g9(row.bargaining_area) << ',' << row_status_name(row.status)
        << '\n';
  }
  return out.str();
}

std::string monte_carlo_csv(const MonteCarloReport& report) {
  std::ostringstream out;
  out << "index,delta1,delta2,s1_star,s2_star,p1_star,p2_star,u1_star,"
         "u2_star,status\n";
  for (const McRow& row : report.rows) {
    out << row.index << ',' << format_g9(row.delta1) << ','
        << format_g9(row.delta2) << ',' << opt_g9(row.s1_star) << ','
        << opt_g9(row.s2_star) << ',' << opt_g9(row.p1_star) << ','
        << opt_g9(row.p2_star) << ',' << opt_g9(row.u1_star) << ','
        << opt_g9(row.u2_star) << ',' << row_status_name(row.status) << '\n';
  }
  out << "# quantity,count,mean,sd,q05,q25,q50,q75,q95\n";
  for (const QuantitySummary& s : report.summaries) {
    out << "# " << s.name << ',' << s.count << ',' << format_g9(s.mean) << ','
        << format_g9(s.sd) << ',' << format_g9(s.q05) << ','
        << format_g9(s.q25) << ',' << format_g9(s.q50) << ','
        << format_g9(s.q75) << ',' << format_g9(s.q95) << '\n';
  }
  out << "# disagreement_rate," << format_g9(report.disagreement_rate) << '\n';
  out << "# failed_samples," << report.failed_count << '\n';
  out << "# samples," << report.sample_count << '\n';
  out << "# seed," << report.seed << '\n';
  return out.str();
}

std::string bargaining_csv(const BargainingSet& set) {
  std::ostringstream out;
  out << "s1,s2,p1,p2\n";
  for (const CloudPoint& pt : set.cloud.points) {
    out << format_g9(pt.s1) << ',' << format_g9(pt.s2) << ','
        << format_g9(pt.p1) << ',' << format_g9(pt.p2) << '\n';
  }
  out << "# area," << format_g9(set.area) << '\n';
  out << "# area_estimate," << format_g9(set.area_estimate) << '\n';
  out << "# degenerate," << bool_name(set.is_degenerate) << '\n';
  out << "# boundary_claim_mismatch,"
      << bool_name(set.paper_boundary_claim_mismatch) << '\n';
  return out.str();
}

std::string transcript_csv(const DemandGameTranscript& t) {
  std::ostringstream out;
  out << "t_payoff1,t_payoff2,q1,q2,compatible,final1,final2\n";
  out << format_g9(t.threat_payoffs.x) << ',' << format_g9(t.threat_payoffs.y)
      << ',' << format_g9(t.demands.x) << ',' << format_g9(t.demands.y) << ','
      << bool_name(t.compatible) << ',' << format_g9(t.final_payoffs.x) << ','
      << format_g9(t.final_payoffs.y) << '\n';
  return out.str();
}

std::string welfare_csv(const WelfareReport& report) {
  std::ostringstream out;
  out << "player,behavioral_payoff,rational_value,distortion_value,"
         "decomposition_residual,welfare_gap\n";
  const auto row = [&](int player, const WelfareReport::PerPlayer& p) {
    out << player << ',' << format_g9(p.behavioral_payoff) << ','
        << format_g9(p.rational_value) << ',' << format_g9(p.distortion_value)
        << ',' << format_g9(p.decomposition_residual) << ','
        << format_g9(p.welfare_gap) << '\n';
  };
  row(1, report.player1);
  row(2, report.player2);
  return out.str();
}

}  // namespace nashdelta
