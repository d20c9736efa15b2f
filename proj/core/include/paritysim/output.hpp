#pragma once

// Deterministic emission of sweep grids and tables: CSV with one row per
// cell and a JSON document bundling grid plus metadata. Floating-point
// values are printed with 17 significant digits.

#include <ostream>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "paritysim/analysis.hpp"

namespace paritysim::output {

// %.17g
std::string format_double(double v);

void write_grid_csv(std::ostream& os, const analysis::SweepGrid& grid);

// {"x": {...}, "y": {...}, "values": [[...]], "metadata": {...}}
void write_grid_json(std::ostream& os, const analysis::SweepGrid& grid,
                     const nlohmann::json& metadata);

std::string grid_csv_string(const analysis::SweepGrid& grid);

void write_rules_csv(std::ostream& os, const analysis::SelectionRuleTable& table);
void write_rules_text(std::ostream& os, const analysis::SelectionRuleTable& table);
nlohmann::json rules_json(const analysis::SelectionRuleTable& table);

// Machine-readable error payload for the error stream.
void write_error_json(std::ostream& os, const std::string& kind, const std::string& field,
                      const std::string& message);

} // namespace paritysim::output
