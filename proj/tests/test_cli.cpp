// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "uca/cli.hpp"
#include "uca/errors.hpp"

using namespace uca;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

#ifndef UCA_CLI_PATH
#define UCA_CLI_PATH ""
#endif

int run_binary(const std::string& args) {
    const std::string exe = UCA_CLI_PATH;
    REQUIRE(!exe.empty());
    const std::string cmd = "\"" + exe + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return status;
}

} // namespace

TEST_CASE("parse_config applies the documented defaults to an empty document") {
    const RunConfig cfg = parse_config("{}");
    CHECK(cfg.elements == 12);
    CHECK(cfg.radius_m == doctest::Approx(9.69e-3).epsilon(1e-12));
    CHECK(cfg.frequency_hz == doctest::Approx(28e9).epsilon(1e-12));
    CHECK(cfg.element_variant == ElementVariant::analytic_patch);
    CHECK(cfg.hpbw_e_deg == 100.0);
    CHECK(cfg.hpbw_h_deg == 104.0);
    CHECK(cfg.source == ExcitationSource::preset);
    CHECK(cfg.preset == CastPreset::broadcast);
    CHECK(cfg.grid_step_deg == 1.0);
    CHECK(cfg.ring_theta_deg == 20.0);
    CHECK(cfg.ring_samples == 64);
    CHECK(cfg.crosstalk_l_max == 5);
    CHECK(cfg.plane.standoff_wl == 4.0);
    CHECK(cfg.plane.points_x == 61);
    CHECK(cfg.nf_padding == 4);
    CHECK(cfg.output_dir == "out");
}

TEST_CASE("parse_config handles units and alternate geometry keys") {
    const RunConfig cfg = parse_config(R"({
        "geometry": {"elements": 8, "diameter_mm": 20.0, "frequency_ghz": 30.0},
        "excitation": {"oam_l": -2},
        "grid": {"step_deg": 2.0}
    })");
    CHECK(cfg.elements == 8);
    CHECK(cfg.radius_m == doctest::Approx(10e-3).epsilon(1e-12));
    CHECK(cfg.frequency_hz == doctest::Approx(30e9).epsilon(1e-12));
    CHECK(cfg.source == ExcitationSource::oam);
    CHECK(cfg.oam_l == -2);
    CHECK(cfg.grid_step_deg == 2.0);

    const RunConfig cfg2 = parse_config(R"({
        "excitation": {"modes": [0, 2, -2], "steering_deg": 15.0, "normalization": "unit-peak"}
    })");
    CHECK(cfg2.source == ExcitationSource::modes);
    CHECK(cfg2.steering_deg == 15.0);
    CHECK(cfg2.normalization == Normalization::unit_peak);
}

TEST_CASE("parse_config rejects malformed and contradictory documents") {
    CHECK_THROWS_AS(parse_config("not json"), format_error);
    CHECK_THROWS_AS(parse_config("[1, 2]"), format_error);

    // Unknown keys are rejected, and the error names the offending key.
    try {
        parse_config(R"({"geometry": {"radius_m": 1.0}})");
        FAIL("expected format_error");
    } catch (const format_error& e) {
        CHECK(std::string(e.what()).find("radius_m") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(R"({"grid": {"step": 1.0}})"), format_error);

    // Exactly one excitation source.
    CHECK_THROWS_AS(parse_config(R"({"excitation": {"preset": "broadcast", "oam_l": 1}})"),
                    format_error);
    // Steering is meaningful only for explicit mode sets.
    CHECK_THROWS_AS(parse_config(R"({"excitation": {"preset": "broadcast",
                                                    "steering_deg": 10.0}})"),
                    format_error);
    // Radius and diameter are mutually exclusive.
    CHECK_THROWS_AS(parse_config(R"({"geometry": {"radius_mm": 9.69, "diameter_mm": 19.38}})"),
                    format_error);
    // Variant-specific element keys.
    CHECK_THROWS_AS(parse_config(R"({"element": {"variant": "isotropic", "hpbw_e_deg": 90.0}})"),
                    format_error);
    CHECK_THROWS_AS(parse_config(R"({"element": {"variant": "cos-power", "up_gain": 0.5}})"),
                    format_error);
    CHECK_THROWS_AS(parse_config(R"({"element": {"variant": "tabulated"}})"), format_error);
}

TEST_CASE("make_excitation validates explicit weight vectors") {
    RunConfig cfg = parse_config(R"({"excitation": {"weights": [[1.0, 0.0], [0.0, 1.0]]}})");
    CHECK(cfg.source == ExcitationSource::weights);
    CHECK_THROWS_AS(cfg.make_excitation(), invalid_argument); // 2 weights, 12 elements
    cfg.elements = 2;
    CHECK(cfg.make_excitation().size() == 2);
}

TEST_CASE("run() writes the documented artifacts and a resolved-config sidecar") {
    const fs::path dir = fresh_dir("uca_cli_run_test");
    RunConfig cfg = parse_config("{}");
    cfg.grid_step_deg = 5.0;
    cfg.output_dir = dir.string();

    std::ostringstream out;
    CHECK(run("pattern", cfg, out) == 0);
    CHECK(fs::exists(dir / "pattern.csv"));
    CHECK(fs::exists(dir / "pattern.json"));
    CHECK(fs::exists(dir / "pattern_config.json"));
    CHECK(out.str().find("peak directivity") != std::string::npos);

    // The sidecar parses back to an equivalent configuration.
    const RunConfig round = parse_config(slurp(dir / "pattern_config.json"));
    CHECK(round.elements == cfg.elements);
    CHECK(round.grid_step_deg == 5.0);
    CHECK(round.radius_m == doctest::Approx(cfg.radius_m).epsilon(1e-12));

    std::ostringstream quiet_out;
    CHECK(run("pattern", cfg, quiet_out, true) == 0);
    CHECK(quiet_out.str().empty());

    CHECK_THROWS_AS(run("no-such-command", cfg, out), invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("run('presets') lists all six presets") {
    std::ostringstream out;
    CHECK(run("presets", parse_config("{}"), out) == 0);
    const std::string text = out.str();
    for (const char* name : {"broadcast", "unicast-A", "unicast-B", "multicast-A", "multicast-B",
                             "multicast-C"})
        CHECK(text.find(name) != std::string::npos);
}

TEST_CASE("repeated runs are byte-for-byte deterministic") {
    const fs::path a = fresh_dir("uca_cli_det_a");
    const fs::path b = fresh_dir("uca_cli_det_b");
    RunConfig cfg = parse_config(R"({"excitation": {"preset": "multicast-B"}})");
    cfg.grid_step_deg = 5.0;

    std::ostringstream sink;
    cfg.output_dir = a.string();
    REQUIRE(run("pattern", cfg, sink, true) == 0);
    REQUIRE(run("cut", cfg, sink, true) == 0);
    cfg.output_dir = b.string();
    REQUIRE(run("pattern", cfg, sink, true) == 0);
    REQUIRE(run("cut", cfg, sink, true) == 0);

    CHECK(slurp(a / "pattern.csv") == slurp(b / "pattern.csv"));
    CHECK(slurp(a / "pattern.json") == slurp(b / "pattern.json"));
    CHECK(slurp(a / "cut.csv") == slurp(b / "cut.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("nearfield followed by nf2ff consumes the exported scan") {
    const fs::path dir = fresh_dir("uca_cli_nf_test");
    RunConfig cfg = parse_config(R"({
        "excitation": {"oam_l": 1},
        "nearfield": {"points_x": 31, "points_y": 31}
    })");
    cfg.grid_step_deg = 5.0;
    cfg.output_dir = dir.string();

    std::ostringstream out;
    REQUIRE(run("nearfield", cfg, out) == 0);
    REQUIRE(fs::exists(dir / "scan.csv"));
    REQUIRE(fs::exists(dir / "scan.csv.json"));
    REQUIRE(run("nf2ff", cfg, out) == 0);
    CHECK(fs::exists(dir / "nf2ff_pattern.csv"));
    CHECK(out.str().find("winding number: 1") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("installed binary: happy path and error exit codes") {
    const fs::path dir = fresh_dir("uca_cli_bin_test");
    const fs::path cfg_path = dir / "cfg.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"excitation": {"preset": "unicast-B"}})" << "\n";
    }

    CHECK(run_binary("presets") == 0);
    CHECK(run_binary("pattern --config \"" + cfg_path.string() + "\" --out \"" +
                     (dir / "out").string() + "\" --grid-deg 5 --quiet") == 0);
    CHECK(fs::exists(dir / "out" / "pattern.csv"));

    // Unknown subcommands and broken configs exit non-zero.
    CHECK(run_binary("definitely-not-a-command") != 0);
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"geometry": {"bogus_key": 1}})" << "\n";
    }
    CHECK(run_binary("pattern --config \"" + cfg_path.string() + "\" --out \"" +
                     (dir / "out2").string() + "\"") != 0);
    fs::remove_all(dir);
}
