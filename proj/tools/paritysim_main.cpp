// paritysim: configuration ingestion, sweep orchestration and result
// emission for the parity-engineered light-matter interaction toolkit.
//
// Subcommands: rules, spectrum, phase-sweep, sidebands, calibrate, validate.
// Exit codes: 0 ok, 1 config error, 2 numerical invariant violation,
// 3 non-convergence. Errors go to stderr as JSON.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "paritysim/config.hpp"
#include "paritysim/output.hpp"
#include "paritysim/threading.hpp"
#include "paritysim/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace paritysim;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;   // overrides output.path
    std::string format;    // overrides output.format
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "JSON config file (sample defaults when omitted)");
    cmd->add_option("--set", args.overrides, "dotted-path override, e.g. system.qubit.gap_hz=8.0e9");
    cmd->add_option("-o,--out-dir", args.out_dir, "output directory (default from config)");
    cmd->add_option("--format", args.format, "grid format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

config::RunConfig load(const CommonArgs& args, json& resolved) {
    config::RunConfig cfg = config::load_config(args.config_path, args.overrides, &resolved);
    if (!args.out_dir.empty()) {
        cfg.output.path = args.out_dir;
        resolved["output"]["path"] = args.out_dir;
    }
    if (!args.format.empty()) {
        cfg.output.format =
            args.format == "json" ? config::OutputFormat::json : config::OutputFormat::csv;
        resolved["output"]["format"] = args.format;
    }
    return cfg;
}

json make_metadata(const std::string& command, const json& resolved) {
    return json{{"command", command}, {"config", resolved}};
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

void emit_grid(const config::RunConfig& cfg, const json& metadata, const std::string& name,
               const analysis::SweepGrid& grid) {
    const fs::path dir(cfg.output.path);
    fs::create_directories(dir);
    write_file(dir / (name + ".meta.json"), metadata.dump(2) + "\n");
    if (cfg.output.format == config::OutputFormat::csv) {
        write_file(dir / (name + ".csv"), output::grid_csv_string(grid));
    } else {
        std::ostringstream os;
        output::write_grid_json(os, grid, metadata);
        write_file(dir / (name + ".json"), os.str());
    }
    std::cout << "wrote " << (dir / name).string()
              << (cfg.output.format == config::OutputFormat::csv ? ".csv" : ".json") << "\n";
}

analysis::Axis axis_from_spec(const config::AxisSpec& spec) {
    return {spec.name, spec.linspace()};
}

config::AxisSpec require_axis(const std::optional<config::AxisSpec>& axis,
                              const std::string& expected_name, config::AxisSpec fallback) {
    if (!axis) return fallback;
    if (axis->name != expected_name)
        throw config::ConfigError("sweep", "this subcommand sweeps \"" + expected_name +
                                               "\", got axis \"" + axis->name + "\"");
    return *axis;
}

analysis::SpectrumMapParams map_params(const config::RunConfig& cfg) {
    analysis::SpectrumMapParams p;
    p.qubit = cfg.qubit;
    p.resonator = cfg.resonator;
    p.coupling = cfg.coupling;
    p.dec = cfg.dec;
    p.drive = cfg.drive;
    p.linewidth_prefactor = cfg.map.linewidth_prefactor;
    p.workers = worker_count_from_env();
    return p;
}

int cmd_rules(const CommonArgs& args) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    analysis::SelectionRuleParams params;
    params.g_t = cfg.coupling.g_transversal / cfg.qubit.gap;
    params.omega_r = cfg.resonator.omega_r / cfg.qubit.gap;
    params.gap = 1.0; // rules are scale-free; work in units of the gap
    const auto table = analysis::selection_rule_table(std::min(cfg.resonator.n_max, 6), params);

    output::write_rules_text(std::cout, table);

    const fs::path dir(cfg.output.path);
    fs::create_directories(dir);
    const json meta = make_metadata("rules", resolved);
    json doc = output::rules_json(table);
    doc["metadata"] = meta;
    write_file(dir / "rules.json", doc.dump(2) + "\n");
    write_file(dir / "rules.meta.json", meta.dump(2) + "\n");
    if (cfg.output.format == config::OutputFormat::csv) {
        std::ostringstream os;
        output::write_rules_csv(os, table);
        write_file(dir / "rules.csv", os.str());
    }
    std::cout << "wrote " << (dir / "rules.json").string() << "\n";
    return 0;
}

double sweet_spot_center(rwa::Process kind, const config::RunConfig& cfg) {
    const double gap = cfg.qubit.gap;
    const double wr = cfg.resonator.omega_r;
    switch (kind) {
    case rwa::Process::one_photon: return gap;
    case rwa::Process::two_photon: return 0.5 * gap;
    case rwa::Process::red_sideband: return gap - wr;
    case rwa::Process::blue_sideband: return gap + wr;
    case rwa::Process::blue_two_photon: return 0.5 * (gap + wr);
    }
    return gap;
}

int cmd_spectrum(const CommonArgs& args, const std::string& kind_name) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    rwa::Process kind;
    if (kind_name == "one_photon") kind = rwa::Process::one_photon;
    else if (kind_name == "two_photon") kind = rwa::Process::two_photon;
    else if (kind_name == "red_sideband") kind = rwa::Process::red_sideband;
    else if (kind_name == "blue_sideband") kind = rwa::Process::blue_sideband;
    else if (kind_name == "blue_two_photon") kind = rwa::Process::blue_two_photon;
    else throw config::ConfigError("kind", "unknown spectrum kind: " + kind_name);

    const auto x = require_axis(cfg.sweep_x, "theta_pi", {"theta_pi", 0.2, 0.8, 61});
    // Default window: ±6% around the sweet-spot process frequency, fine
    // enough to resolve the qubit linewidth.
    const double center_hz = sweet_spot_center(kind, cfg) / two_pi;
    const auto y = require_axis(cfg.sweep_y, "frequency_hz",
                                {"frequency_hz", 0.94 * center_hz, 1.06 * center_hz, 241});
    const auto grid = analysis::spectrum_map(kind, map_params(cfg), axis_from_spec(x), axis_from_spec(y));
    emit_grid(cfg, make_metadata("spectrum " + kind_name, resolved), "spectrum_" + kind_name, grid);
    return 0;
}

int cmd_sidebands(const CommonArgs& args) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    const auto x = require_axis(cfg.sweep_x, "theta_pi", {"theta_pi", 0.2, 0.8, 61});
    const double lo_hz = 0.90 * sweet_spot_center(rwa::Process::two_photon, cfg) / two_pi;
    const double hi_hz = 1.08 * sweet_spot_center(rwa::Process::blue_sideband, cfg) / two_pi;
    const auto y =
        require_axis(cfg.sweep_y, "frequency_hz", {"frequency_hz", lo_hz, hi_hz, 1201});
    const auto grid = analysis::sideband_overlay_map(map_params(cfg), cfg.map.multipliers,
                                                     axis_from_spec(x), axis_from_spec(y));
    emit_grid(cfg, make_metadata("sidebands", resolved), "sidebands", grid);
    return 0;
}

int cmd_phase_sweep(const CommonArgs& args, const std::string& engine_flag) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    if (!engine_flag.empty()) {
        cfg.engine = engine_flag == "oracle" ? config::Engine::oracle : config::Engine::analytic;
        resolved["engine"] = engine_flag;
        if (cfg.engine == config::Engine::oracle && !cfg.has_propagation_block) {
            cfg.has_propagation_block = true; // flag path: defaults are fine
            resolved["propagation"] = {{"t_final_factor", cfg.propagation.t_final_factor},
                                       {"oversample", cfg.propagation.oversample}};
        }
    }
    const auto x = require_axis(cfg.sweep_x, "phi", {"phi", 0.0, two_pi, 64});

    analysis::PhaseSweepParams p;
    p.qubit = cfg.qubit;
    p.dec = cfg.dec;
    p.drive = cfg.drive;
    p.use_oracle = cfg.engine == config::Engine::oracle;
    p.oracle_t_final_factor = cfg.propagation.t_final_factor;
    p.workers = worker_count_from_env();

    const auto grid = analysis::phase_sweep(p, x.linspace());
    emit_grid(cfg, make_metadata("phase-sweep", resolved), "phase_sweep", grid);
    return 0;
}

int cmd_calibrate(const CommonArgs& args) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    const double omega_q = model::qubit_frequency(cfg.qubit);
    const double delta = omega_q - cfg.resonator.omega_r;
    const double g = cfg.coupling.g_transversal;

    const double gamma_q = analysis::power_broadening(cfg.calibrate.n_bar_drive, cfg.dec, g);
    const double shift = analysis::ac_stark_shift(cfg.calibrate.n_bar_readout, g, delta);
    const double kappa_tot = cfg.resonator.kappa_external + cfg.resonator.kappa_internal;

    std::vector<double> probe(2001);
    const double pull = g * g / delta;
    for (std::size_t i = 0; i < probe.size(); ++i)
        probe[i] = cfg.resonator.omega_r - pull - 5.0 * kappa_tot +
                   10.0 * kappa_tot * double(i) / double(probe.size() - 1);
    const auto curve = analysis::resonator_transmission(cfg.resonator, analysis::QubitState::ground,
                                                        g, delta, probe);

    json doc{
        {"qubit_frequency_hz", omega_q / two_pi},
        {"detuning_hz", delta / two_pi},
        {"power_broadening",
         {{"n_bar_drive", cfg.calibrate.n_bar_drive},
          {"gamma_q_hz", gamma_q / two_pi},
          {"gamma2_hz", cfg.dec.gamma2 / two_pi}}},
        {"ac_stark",
         {{"n_bar_readout", cfg.calibrate.n_bar_readout},
          {"shift_hz", shift / two_pi},
          {"photons_from_shift", analysis::photons_from_stark_shift(shift, g, delta)}}},
        {"critical_photon_number", analysis::critical_photon_number(g, delta)},
        {"stray_excitation", analysis::stray_excitation(omega_q, cfg.drive.temperature)},
        {"transmission",
         {{"kappa_tot_hz", kappa_tot / two_pi},
          {"fitted_fwhm_hz", analysis::fitted_fwhm(probe, curve) / two_pi}}},
    };
    std::cout << doc.dump(2) << "\n";
    const fs::path dir(cfg.output.path);
    fs::create_directories(dir);
    write_file(dir / "calibrate.json", doc.dump(2) + "\n");
    write_file(dir / "calibrate.meta.json", make_metadata("calibrate", resolved).dump(2) + "\n");
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    json resolved;
    config::RunConfig cfg = load(args, resolved);
    const auto results = validate::run_acceptance(worker_count_from_env());
    validate::print_results(std::cout, results);
    json rows = json::array();
    for (const auto& r : results)
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    const fs::path dir(cfg.output.path);
    fs::create_directories(dir);
    write_file(dir / "validate.json", json{{"criteria", rows}}.dump(2) + "\n");
    write_file(dir / "validate.meta.json", make_metadata("validate", resolved).dump(2) + "\n");
    if (validate::all_passed(results)) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    return 2;
}

int dispatch(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const config::ConfigError& e) {
        output::write_error_json(std::cerr, "config", e.field(), e.message());
        return 1;
    } catch (const dynamics::ConvergenceError& e) {
        output::write_error_json(std::cerr, "convergence", "", e.what());
        return 3;
    } catch (const dynamics::NumericError& e) {
        output::write_error_json(std::cerr, "numeric", "", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        output::write_error_json(std::cerr, "config", "", e.what());
        return 1;
    } catch (const std::exception& e) {
        output::write_error_json(std::cerr, "numeric", "", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity-engineered light-matter interaction simulator"};
    app.require_subcommand(1);

    CommonArgs rules_args;
    CLI::App* rules = app.add_subcommand("rules", "selection-rule table at the degeneracy point");
    add_common_options(rules, rules_args);

    CommonArgs spectrum_args;
    std::string kind = "one_photon";
    CLI::App* spectrum = app.add_subcommand("spectrum", "p_e map over Bloch angle and drive frequency");
    add_common_options(spectrum, spectrum_args);
    spectrum->add_option("-k,--kind", kind, "process kind")
        ->check(CLI::IsMember(
            {"one_photon", "two_photon", "red_sideband", "blue_sideband", "blue_two_photon"}));

    CommonArgs phase_args;
    std::string engine_flag;
    CLI::App* phase = app.add_subcommand("phase-sweep", "p_e versus antenna relative phase");
    add_common_options(phase, phase_args);
    phase->add_option("--engine", engine_flag, "analytic or oracle")
        ->check(CLI::IsMember({"analytic", "oracle"}));

    CommonArgs sb_args;
    CLI::App* sidebands = app.add_subcommand("sidebands", "overlay map of all transition processes");
    add_common_options(sidebands, sb_args);

    CommonArgs cal_args;
    CLI::App* calibrate = app.add_subcommand("calibrate", "power broadening, AC Stark, n_crit, transmission");
    add_common_options(calibrate, cal_args);

    CommonArgs val_args;
    CLI::App* validate_cmd = app.add_subcommand("validate", "run the acceptance suite");
    add_common_options(validate_cmd, val_args);

    CLI11_PARSE(app, argc, argv);

    if (rules->parsed()) return dispatch([&] { return cmd_rules(rules_args); });
    if (spectrum->parsed()) return dispatch([&] { return cmd_spectrum(spectrum_args, kind); });
    if (phase->parsed()) return dispatch([&] { return cmd_phase_sweep(phase_args, engine_flag); });
    if (sidebands->parsed()) return dispatch([&] { return cmd_sidebands(sb_args); });
    if (calibrate->parsed()) return dispatch([&] { return cmd_calibrate(cal_args); });
    if (validate_cmd->parsed()) return dispatch([&] { return cmd_validate(val_args); });
    return 0;
}
