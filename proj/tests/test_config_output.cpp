#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "paritysim/config.hpp"
#include "paritysim/output.hpp"
#include "paritysim/threading.hpp"

using namespace paritysim;
using nlohmann::json;

TEST_CASE("sample defaults parse and carry the device values") {
    const json doc = config::default_config_json();
    const auto cfg = config::parse_config(doc);
    CHECK(cfg.qubit.gap == doctest::Approx(two_pi * 8.2e9));
    CHECK(cfg.resonator.omega_r == doctest::Approx(two_pi * 3.88e9));
    CHECK(cfg.resonator.kappa_external == doctest::Approx(two_pi * 2.43e6));
    CHECK(cfg.resonator.kappa_internal == doctest::Approx(two_pi * 7.0e4));
    CHECK(cfg.coupling.g_transversal == doctest::Approx(two_pi * 4.0e7));
    CHECK(cfg.dec.gamma1 == doctest::Approx(1.0 / 2.6e-6));
    CHECK(cfg.dec.gamma2 == doctest::Approx(1.0 / 1.0e-7));
    CHECK(cfg.drive.temperature == doctest::Approx(0.125));
    CHECK(cfg.resonator.n_max == 8);
    CHECK(cfg.engine == config::Engine::analytic);
}

TEST_CASE("missing required fields report the field path") {
    json doc = config::default_config_json();
    doc["system"]["qubit"].erase("gap_hz");
    try {
        config::parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(e.field() == "system.qubit.gap_hz");
    }
}

TEST_CASE("unknown keys are rejected with their path") {
    json doc = config::default_config_json();
    doc["system"]["qubit"]["gap_ghz"] = 8.2;
    try {
        config::parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(e.field() == "system.qubit.gap_ghz");
    }
    json doc2 = config::default_config_json();
    doc2["turbo"] = true;
    CHECK_THROWS_AS(config::parse_config(doc2), config::ConfigError);
}

TEST_CASE("axis validation") {
    json doc = config::default_config_json();
    doc["sweep"]["x"] = {{"name", "phi"}, {"start", 0.0}, {"stop", 0.0}, {"points", 8}};
    CHECK_THROWS_AS(config::parse_config(doc), config::ConfigError);
    doc["sweep"]["x"] = {{"name", "phi"}, {"start", 0.0}, {"stop", 1.0}, {"points", 1}};
    CHECK_THROWS_AS(config::parse_config(doc), config::ConfigError);
    doc["sweep"]["x"] = {{"name", "phi"}, {"start", 0.0}, {"stop", 1.0}, {"points", 5}};
    const auto cfg = config::parse_config(doc);
    REQUIRE(cfg.sweep_x.has_value());
    const auto v = cfg.sweep_x->linspace();
    CHECK(v.size() == 5);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == doctest::Approx(0.5));
}

TEST_CASE("oracle engine requires a propagation block") {
    json doc = config::default_config_json();
    doc["engine"] = "oracle";
    CHECK_THROWS_AS(config::parse_config(doc), config::ConfigError);
    doc["propagation"] = {{"t_final_factor", 10.0}};
    const auto cfg = config::parse_config(doc);
    CHECK(cfg.engine == config::Engine::oracle);
    CHECK(cfg.propagation.t_final_factor == 10.0);
}

TEST_CASE("invalid physical values are rejected") {
    json doc = config::default_config_json();
    doc["system"]["decoherence"]["t2_s"] = 1.0; // t2 >> 2 t1
    CHECK_THROWS_AS(config::parse_config(doc), config::ConfigError);
    json doc2 = config::default_config_json();
    doc2["system"]["qubit"]["gap_hz"] = -1.0;
    CHECK_THROWS_AS(config::parse_config(doc2), config::ConfigError);
}

TEST_CASE("dotted overrides are applied before validation") {
    json resolved;
    const auto cfg =
        config::load_config("", {"system.qubit.gap_hz=9.0e9", "drive.temperature_k=0"}, &resolved);
    CHECK(cfg.qubit.gap == doctest::Approx(two_pi * 9.0e9));
    CHECK(cfg.drive.temperature == 0.0);
    CHECK(resolved["system"]["qubit"]["gap_hz"] == 9.0e9);

    CHECK_THROWS_AS(config::load_config("", {"no_equals_sign"}, nullptr), config::ConfigError);
    // an override inventing a key is caught by strict validation
    CHECK_THROWS_AS(config::load_config("", {"system.qubit.color=3"}, nullptr),
                    config::ConfigError);
    // overrides may introduce an optional block that defaults leave out
    const auto with_map =
        config::load_config("", {"map.multipliers.two_photon=5.0"}, nullptr);
    CHECK(with_map.map.multipliers.two_photon == 5.0);
    // but cannot traverse through a scalar
    CHECK_THROWS_AS(config::load_config("", {"engine.mode=1"}, nullptr), config::ConfigError);
}

TEST_CASE("17 significant digit formatting round-trips") {
    for (double v : {std::numbers::pi, 0.042924889084963374, 2916.0, 1e-300}) {
        const std::string s = output::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("grid csv layout is one row per cell") {
    analysis::SweepGrid grid;
    grid.x = {"phi", {0.0, 1.5}};
    grid.y = {"drive_frequency_hz", {10.0}};
    grid.values = {0.25, 0.5};
    const std::string csv = output::grid_csv_string(grid);
    CHECK(csv == "phi,drive_frequency_hz,value\n0,10,0.25\n1.5,10,0.5\n");
}

TEST_CASE("grid json bundles grid and metadata") {
    analysis::SweepGrid grid;
    grid.x = {"theta_pi", {0.25, 0.5}};
    grid.y = {"frequency_hz", {1.0, 2.0}};
    grid.values = {1.0, 0.5, 0.25, 0.125};
    std::ostringstream os;
    output::write_grid_json(os, grid, json{{"command", "test"}});
    const json doc = json::parse(os.str());
    CHECK(doc["x"]["label"] == "theta_pi");
    CHECK(doc["values"][0][1] == 0.5);
    CHECK(doc["values"][1][0] == 0.25);
    CHECK(doc["metadata"]["command"] == "test");
}

TEST_CASE("rules emission carries the verdict columns") {
    const auto table = analysis::selection_rule_table(2);
    std::ostringstream os;
    output::write_rules_csv(os, table);
    const std::string csv = os.str();
    CHECK(csv.find("process,drive,drive_parity,operator_parity,qubit_point,verdict,amplitude") == 0);
    CHECK(csv.find("red_sideband,transversal,odd,odd,degeneracy,forbidden") != std::string::npos);
    const json doc = output::rules_json(table);
    CHECK(doc["rows"].size() == 10);
}

TEST_CASE("parallel sweeps visit every cell and surface worker exceptions") {
    std::vector<int> hits(16, 0);
    parallel_for_index(16, 4, [&](std::size_t i) { hits[i] = 1; });
    for (int h : hits) CHECK(h == 1);

    CHECK_THROWS_AS(parallel_for_index(8, 4,
                                       [](std::size_t i) {
                                           if (i == 5) throw std::runtime_error("cell failure");
                                       }),
                    std::runtime_error);
}

TEST_CASE("error payloads are machine readable") {
    std::ostringstream os;
    output::write_error_json(os, "config", "system.qubit.gap_hz", "required field is missing");
    const json doc = json::parse(os.str());
    CHECK(doc["error"]["kind"] == "config");
    CHECK(doc["error"]["field"] == "system.qubit.gap_hz");
}
