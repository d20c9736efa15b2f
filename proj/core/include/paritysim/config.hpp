#pragma once

// Strict JSON configuration ingestion. Frequencies are Hz-valued in config
// files and converted to angular rad/s here, once, at the boundary; times in
// seconds, temperatures in kelvin. Unknown keys are rejected with the full
// field path.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "paritysim/analysis.hpp"

namespace paritysim::config {

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(field), message_(message) {}
    const std::string& field() const { return field_; }
    const std::string& message() const { return message_; }

  private:
    std::string field_;
    std::string message_;
};

struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    std::vector<double> linspace() const;
};

enum class Engine { analytic, oracle };
enum class OutputFormat { csv, json };

struct RunConfig {
    model::QubitParams qubit;
    model::ResonatorParams resonator;
    model::CouplingParams coupling;
    dynamics::DecoherenceParams dec;
    model::DriveSpec drive;

    std::optional<AxisSpec> sweep_x;
    std::optional<AxisSpec> sweep_y;

    Engine engine = Engine::analytic;
    struct Propagation {
        double t_final_factor = 12.0; // budget in units of 1/gamma1
        int oversample = 1;
    } propagation;
    bool has_propagation_block = false;

    struct MapBlock {
        double linewidth_prefactor = 1.0;
        analysis::OverlayMultipliers multipliers;
    } map;

    struct Calibrate {
        double n_bar_drive = 0.16;
        double n_bar_readout = 33.0;
    } calibrate;

    struct Output {
        std::string path = "out";
        OutputFormat format = OutputFormat::csv;
    } output;
};

// Reference sample defaults as a JSON document (Hz units, ready to edit).
nlohmann::json default_config_json();

// Parse + validate a full config document. Throws ConfigError with the
// offending field path.
RunConfig parse_config(const nlohmann::json& doc);

// Load from file (or defaults when path is empty), apply dotted-path
// overrides like "system.qubit.gap_hz=8.0e9", validate. The resolved JSON
// (defaults materialized, overrides applied) comes back for metadata echo.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                      nlohmann::json* resolved = nullptr);

} // namespace paritysim::config
