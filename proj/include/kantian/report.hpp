#pragma once

// CSV and text renderings. CSV numbers use 12 significant digits; the
// in-memory results keep full precision.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kantian/equilibrium.hpp"
#include "kantian/pareto.hpp"
#include "kantian/shift.hpp"

namespace kantian {

std::string csv_number(double v);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// One "# key=value" line per entry.
void write_config_echo(std::ostream& os, const ConfigEcho& config);

void write_frontier_csv(std::ostream& os, int n, const std::vector<ParetoPoint>& points);

void write_plan_header(std::ostream& os, int n);
void write_plan_row(std::ostream& os, const ShiftPlan& plan);
/// Row for a point whose plan could not be built: x_p, empty fields, and the
/// verdict column set to `status`.
void write_plan_error_row(std::ostream& os, const Vector& x_p, const std::string& status);

/// One row per player, then a "# summary" line.
void write_report_csv(std::ostream& os, const EquilibriumReport& rep);

std::string report_text(const EquilibriumReport& rep);
std::string plan_text(const ShiftPlan& plan);
std::string vector_text(const Vector& v);

}  // namespace kantian
