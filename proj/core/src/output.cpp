#include "paritysim/output.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace paritysim::output {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const analysis::SweepGrid& grid) {
    os << grid.x.label << ',' << grid.y.label << ",value\n";
    for (std::size_t ix = 0; ix < grid.x.values.size(); ++ix)
        for (std::size_t iy = 0; iy < grid.y.values.size(); ++iy)
            os << format_double(grid.x.values[ix]) << ',' << format_double(grid.y.values[iy])
               << ',' << format_double(grid.at(ix, iy)) << '\n';
}

std::string grid_csv_string(const analysis::SweepGrid& grid) {
    std::ostringstream os;
    write_grid_csv(os, grid);
    return os.str();
}

void write_grid_json(std::ostream& os, const analysis::SweepGrid& grid,
                     const nlohmann::json& metadata) {
    auto write_values = [&os](const std::vector<double>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ',';
            os << format_double(v[i]);
        }
        os << ']';
    };
    os << "{\"x\":{\"label\":" << nlohmann::json(grid.x.label).dump() << ",\"values\":";
    write_values(grid.x.values);
    os << "},\"y\":{\"label\":" << nlohmann::json(grid.y.label).dump() << ",\"values\":";
    write_values(grid.y.values);
    os << "},\"values\":[";
    for (std::size_t ix = 0; ix < grid.x.values.size(); ++ix) {
        if (ix) os << ',';
        os << '[';
        for (std::size_t iy = 0; iy < grid.y.values.size(); ++iy) {
            if (iy) os << ',';
            os << format_double(grid.at(ix, iy));
        }
        os << ']';
    }
    os << "],\"metadata\":" << metadata.dump() << "}\n";
}

void write_rules_csv(std::ostream& os, const analysis::SelectionRuleTable& table) {
    os << "process,drive,drive_parity,operator_parity,qubit_point,verdict,amplitude\n";
    for (const auto& r : table.rows)
        os << analysis::to_string(r.process) << ',' << analysis::to_string(r.drive) << ','
           << ops::to_string(r.drive_parity) << ',' << ops::to_string(r.operator_parity) << ','
           << r.qubit_point << ',' << analysis::to_string(r.verdict) << ','
           << format_double(r.amplitude) << '\n';
}

void write_rules_text(std::ostream& os, const analysis::SelectionRuleTable& table) {
    os << std::left << std::setw(18) << "process" << std::setw(14) << "drive" << std::setw(14)
       << "drive_parity" << std::setw(12) << "qubit_point" << std::setw(11) << "verdict"
       << "amplitude\n";
    for (const auto& r : table.rows)
        os << std::left << std::setw(18) << analysis::to_string(r.process) << std::setw(14)
           << analysis::to_string(r.drive) << std::setw(14) << ops::to_string(r.drive_parity)
           << std::setw(12) << r.qubit_point << std::setw(11) << analysis::to_string(r.verdict)
           << format_double(r.amplitude) << '\n';
}

nlohmann::json rules_json(const analysis::SelectionRuleTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"process", analysis::to_string(r.process)},
                        {"drive", analysis::to_string(r.drive)},
                        {"drive_parity", ops::to_string(r.drive_parity)},
                        {"operator_parity", ops::to_string(r.operator_parity)},
                        {"qubit_point", r.qubit_point},
                        {"verdict", analysis::to_string(r.verdict)},
                        {"amplitude", r.amplitude}});
    return nlohmann::json{{"rows", rows}};
}

void write_error_json(std::ostream& os, const std::string& kind, const std::string& field,
                      const std::string& message) {
    nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
    if (!field.empty()) err["error"]["field"] = field;
    os << err.dump() << "\n";
}

} // namespace paritysim::output
