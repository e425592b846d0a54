#include "kantian/report.hpp"

#include <fmt/format.h>

namespace kantian {

std::string csv_number(double v) {
  if (v == 0.0) return "0";  // no "-0"
  return fmt::format("{:.12g}", v);
}

void write_config_echo(std::ostream& os, const ConfigEcho& config) {
  for (const auto& [key, value] : config) os << "# " << key << '=' << value << '\n';
}

namespace {

void header_block(std::ostream& os, const char* prefix, int n, bool& first) {
  for (int i = 1; i <= n; ++i) {
    os << (first ? "" : ",") << prefix << i;
    first = false;
  }
}

void value_block(std::ostream& os, const Vector& v, bool& first) {
  for (double e : v) {
    os << (first ? "" : ",") << csv_number(e);
    first = false;
  }
}

}  // namespace

void write_frontier_csv(std::ostream& os, int n, const std::vector<ParetoPoint>& points) {
  bool first = true;
  header_block(os, "m_", n, first);
  header_block(os, "x_", n, first);
  header_block(os, "U_", n, first);
  os << ",cert_residual\n";
  for (const ParetoPoint& p : points) {
    first = true;
    value_block(os, p.m, first);
    value_block(os, p.x, first);
    value_block(os, p.payoffs, first);
    os << ',' << csv_number(p.cert_residual) << '\n';
  }
}

void write_plan_header(std::ostream& os, int n) {
  bool first = true;
  header_block(os, "x_p_", n, first);
  header_block(os, "c_", n, first);
  os << ",eps,theta,residual_max";
  header_block(os, "argmax_", n, first);
  os << ",verdict\n";
}

void write_plan_row(std::ostream& os, const ShiftPlan& plan) {
  bool first = true;
  value_block(os, plan.x_p, first);
  value_block(os, plan.c, first);
  os << ',' << csv_number(plan.eps) << ',' << csv_number(plan.theta) << ','
     << csv_number(plan.verification.residual_max);
  value_block(os, plan.verification.oracle_argmax, first);
  os << ',' << verdict_name(plan.verification.verdict) << '\n';
}

void write_plan_error_row(std::ostream& os, const Vector& x_p, const std::string& status) {
  bool first = true;
  value_block(os, x_p, first);
  const auto n = x_p.size();
  for (Eigen::Index k = 0; k < n + 3 + n; ++k) os << ',';
  os << ',' << status << '\n';
}

void write_report_csv(std::ostream& os, const EquilibriumReport& rep) {
  os << "player,x,payoff,residual,oracle_argmax\n";
  for (int i = 0; i < rep.x.size(); ++i)
    os << (i + 1) << ',' << csv_number(rep.x[i]) << ',' << csv_number(rep.payoffs[i]) << ','
       << csv_number(rep.residuals[i]) << ',' << csv_number(rep.oracle_argmax[i]) << '\n';
  os << "# summary kind=" << kind_name(rep.kind) << " verdict=" << verdict_name(rep.verdict)
     << " residual_max=" << csv_number(rep.residual_max) << '\n';
}

std::string vector_text(const Vector& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += fmt::format("{}{:.10g}", i ? ", " : "", v[i]);
  return s + ")";
}

std::string report_text(const EquilibriumReport& rep) {
  std::string s;
  s += fmt::format("{} report\n", kind_name(rep.kind));
  s += fmt::format("  profile        {}\n", vector_text(rep.x));
  s += fmt::format("  payoffs        {}\n", vector_text(rep.payoffs));
  s += fmt::format("  residuals      {}\n", vector_text(rep.residuals));
  s += fmt::format("  residual max   {:.3e}\n", rep.residual_max);
  s += fmt::format("  oracle argmax  {}\n", vector_text(rep.oracle_argmax));
  s += fmt::format("  verdict        {}\n", verdict_name(rep.verdict));
  return s;
}

std::string plan_text(const ShiftPlan& plan) {
  std::string s;
  s += "Shift plan\n";
  s += fmt::format("  target x_p     {}\n", vector_text(plan.x_p));
  s += fmt::format("  direction v    {}\n", vector_text(plan.v));
  s += fmt::format("  eps            {:.10g}  (theta {:.6g})\n", plan.eps, plan.theta);
  s += fmt::format("  lower bounds c {}{}\n", vector_text(plan.c),
                   plan.origin_tangent ? "  (tangent passes through the origin)" : "");
  s += fmt::format("  shifted z*     {}\n", vector_text(plan.z_star));
  s += fmt::format("  orthogonality  {:.3e}\n", plan.orthogonality);
  s += fmt::format("  oracle argmax  {}\n", vector_text(plan.verification.oracle_argmax));
  s += fmt::format("  verdict        {}\n", verdict_name(plan.verification.verdict));
  return s;
}

}  // namespace kantian
