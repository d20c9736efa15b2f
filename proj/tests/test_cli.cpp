#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("paritysim_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args, const fs::path& dir, const std::string& env = "") {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    std::ostringstream cmd;
    cmd << env << (env.empty() ? "" : " ") << PARITYSIM_CLI_PATH << " " << args << " > " << out
        << " 2> " << err;
    const int status = std::system(cmd.str().c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::array<double, 3>> parse_grid_csv(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line); // header
    std::vector<std::array<double, 3>> rows;
    while (std::getline(in, line)) {
        std::array<double, 3> row{};
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < 3; ++i) {
            std::getline(ls, cell, ',');
            row[i] = std::stod(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("rules subcommand prints and writes the verdict table") {
    const auto dir = scratch_dir("rules");
    const auto r = run_cli("rules -o " + (dir / "out").string(), dir);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("red_sideband") != std::string::npos);
    CHECK(r.out.find("forbidden") != std::string::npos);

    const json doc = json::parse(slurp(dir / "out" / "rules.json"));
    bool found = false;
    for (const auto& row : doc["rows"])
        if (row["process"] == "red_sideband" && row["drive"] == "transversal") {
            CHECK(row["verdict"] == "forbidden");
            found = true;
        }
    CHECK(found);
    CHECK(fs::exists(dir / "out" / "rules.meta.json"));
    CHECK(fs::exists(dir / "out" / "rules.csv"));
}

TEST_CASE("missing required field exits 1 with the field path on stderr") {
    const auto dir = scratch_dir("badcfg");
    {
        json doc = json::parse(R"({"system": {"qubit": {"bias_hz": 0.0}}})");
        std::ofstream out(dir / "bad.json");
        out << doc.dump();
    }
    const auto r = run_cli("rules -c " + (dir / "bad.json").string(), dir);
    CHECK(r.exit_code == 1);
    const json err = json::parse(r.err);
    CHECK(err["error"]["kind"] == "config");
    CHECK(err["error"]["field"] == "system.qubit.gap_hz");
}

TEST_CASE("unknown key exits 1") {
    const auto dir = scratch_dir("unknown");
    const auto r = run_cli("rules --set system.qubit.tunnel_hz=1", dir);
    CHECK(r.exit_code == 1);
    const json err = json::parse(r.err);
    CHECK(err["error"]["field"] == "system.qubit.tunnel_hz");
}

TEST_CASE("analytic phase sweep covers the thermal floor and saturation") {
    const auto dir = scratch_dir("phase_analytic");
    const auto r = run_cli("phase-sweep -o " + (dir / "out").string(), dir);
    CHECK(r.exit_code == 0);
    const auto rows = parse_grid_csv(dir / "out" / "phase_sweep.csv");
    REQUIRE(rows.size() == 64);
    double lo = 1.0, hi = 0.0;
    for (const auto& row : rows) {
        lo = std::min(lo, row[2]);
        hi = std::max(hi, row[2]);
    }
    CHECK(lo > 0.03);
    CHECK(lo < 0.06);
    CHECK(hi > 0.45);
    CHECK(hi <= 0.5);
}

TEST_CASE("oracle phase sweep at zero temperature reaches a dark minimum") {
    const auto dir = scratch_dir("phase_oracle");
    const auto r = run_cli("phase-sweep --engine oracle --set drive.temperature_k=0 -o " +
                               (dir / "out").string(),
                           dir);
    CHECK(r.exit_code == 0);
    const auto rows = parse_grid_csv(dir / "out" / "phase_sweep.csv");
    REQUIRE(rows.size() == 64);
    double lo = 1.0, hi = 0.0;
    for (const auto& row : rows) {
        lo = std::min(lo, row[2]);
        hi = std::max(hi, row[2]);
    }
    CHECK(lo < 1e-3);
    CHECK(hi > 0.45);
}

TEST_CASE("spectrum output is byte-identical across worker counts") {
    const auto dir = scratch_dir("determinism");
    const std::string args = "spectrum --kind one_photon --set sweep.x.name=theta_pi "
                             "--set sweep.x.start=0.25 --set sweep.x.stop=0.75 "
                             "--set sweep.x.points=21 --set sweep.y.name=frequency_hz "
                             "--set sweep.y.start=7.0e9 --set sweep.y.stop=1.1e10 "
                             "--set sweep.y.points=41";
    const auto r1 = run_cli(args + " -o " + (dir / "w1").string(), dir, "PARITYSIM_WORKERS=1");
    const auto r2 = run_cli(args + " -o " + (dir / "w4").string(), dir, "PARITYSIM_WORKERS=4");
    const auto r3 = run_cli(args + " -o " + (dir / "w4b").string(), dir, "PARITYSIM_WORKERS=4");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r3.exit_code == 0);
    const std::string a = slurp(dir / "w1" / "spectrum_one_photon.csv");
    const std::string b = slurp(dir / "w4" / "spectrum_one_photon.csv");
    const std::string c = slurp(dir / "w4b" / "spectrum_one_photon.csv");
    REQUIRE(!a.empty());
    CHECK(a == b);
    CHECK(b == c);
}

TEST_CASE("json format bundles the grid with metadata") {
    const auto dir = scratch_dir("jsonfmt");
    const auto r = run_cli("spectrum --kind red_sideband --format json --set sweep.x.name=theta_pi "
                           "--set sweep.x.start=0.3 --set sweep.x.stop=0.7 --set sweep.x.points=5 "
                           "--set sweep.y.name=frequency_hz --set sweep.y.start=4.0e9 "
                           "--set sweep.y.stop=5.0e9 --set sweep.y.points=11 -o " +
                               (dir / "out").string(),
                           dir);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(slurp(dir / "out" / "spectrum_red_sideband.json"));
    CHECK(doc["x"]["values"].size() == 5);
    CHECK(doc["y"]["values"].size() == 11);
    CHECK(doc["values"].size() == 5);
    CHECK(doc["metadata"]["config"]["system"]["qubit"]["gap_hz"] == 8.2e9);
}

TEST_CASE("sidebands overlay map emits a normalized grid") {
    const auto dir = scratch_dir("sidebands");
    const auto r = run_cli("sidebands --set sweep.x.name=theta_pi --set sweep.x.start=0.3 "
                           "--set sweep.x.stop=0.7 --set sweep.x.points=17 "
                           "--set sweep.y.name=frequency_hz --set sweep.y.start=3.0e9 "
                           "--set sweep.y.stop=1.3e10 --set sweep.y.points=101 -o " +
                               (dir / "out").string(),
                           dir);
    CHECK(r.exit_code == 0);
    const auto rows = parse_grid_csv(dir / "out" / "sidebands.csv");
    REQUIRE(rows.size() == 17 * 101);
    double peak = 0.0;
    for (const auto& row : rows) {
        CHECK(row[2] >= 0.0);
        CHECK(row[2] <= 1.0);
        peak = std::max(peak, row[2]);
    }
    CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("calibrate reports the reference device numbers") {
    const auto dir = scratch_dir("calibrate");
    const auto r = run_cli("calibrate -o " + (dir / "out").string(), dir);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(slurp(dir / "out" / "calibrate.json"));
    CHECK(doc["critical_photon_number"].get<double>() == doctest::Approx(2916.0));
    CHECK(doc["stray_excitation"].get<double>() == doctest::Approx(0.0429).epsilon(3e-3));
    CHECK(doc["power_broadening"]["gamma_q_hz"].get<double>() > 1.0e8);
    CHECK(doc["transmission"]["fitted_fwhm_hz"].get<double>() ==
          doctest::Approx(2.5e6).epsilon(0.01));
}

TEST_CASE("numerical failures exit 2 with a numeric error payload") {
    const auto dir = scratch_dir("numeric_err");
    // a resonator degenerate with the qubit makes gamma_minus diverge
    const auto r = run_cli("spectrum --kind red_sideband --set system.resonator.frequency_hz=8.2e9 "
                           "--set sweep.x.name=theta_pi --set sweep.x.start=0.4 "
                           "--set sweep.x.stop=0.6 --set sweep.x.points=3 "
                           "--set sweep.y.name=frequency_hz --set sweep.y.start=1.0e9 "
                           "--set sweep.y.stop=2.0e9 --set sweep.y.points=5",
                           dir);
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.err);
    CHECK(err["error"]["kind"] == "numeric");
}

TEST_CASE("config file with oracle engine but no propagation block exits 1") {
    const auto dir = scratch_dir("oracle_noprop");
    {
        std::ofstream out(dir / "cfg.json");
        out << R"({"system": {"qubit": {"gap_hz": 8.2e9, "bias_hz": 0.0},
                   "resonator": {"frequency_hz": 3.88e9, "kappa_external_hz": 2.43e6,
                                 "kappa_internal_hz": 7.0e4, "n_max": 8},
                   "coupling": {"g_transversal_hz": 4.0e7, "g_longitudinal_hz": 0.0},
                   "decoherence": {"t1_s": 2.6e-6, "t2_s": 1.0e-7}},
                   "drive": {"frequency_hz": 8.2e9, "phase_rad": 0.0, "amplitude_hz": 1.0e7,
                             "imbalance_db": 0.0, "residual_leakage": 0.0, "temperature_k": 0.125},
                   "engine": "oracle"})";
    }
    const auto r = run_cli("phase-sweep -c " + (dir / "cfg.json").string(), dir);
    CHECK(r.exit_code == 1);
    const json err = json::parse(r.err);
    CHECK(err["error"]["field"] == "propagation");
}
