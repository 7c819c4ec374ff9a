// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uca/cli.hpp"
#include "uca/errors.hpp"
#include "uca/io_util.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Uniform circular array synthesis and analysis"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    double grid_deg = 0.0;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON configuration file")->expected(1);
    app.add_option("--out", out_dir, "Output directory (overrides config and UCA_OUT_DIR)");
    app.add_option("--grid-deg", grid_deg, "Far-field grid step in degrees (overrides config)");
    app.add_flag("--quiet", quiet, "Suppress informational output");

    const char* commands[] = {"pattern", "cut", "oam-spectrum", "crosstalk",
                              "nearfield", "nf2ff", "presets"};
    const char* descriptions[] = {
        "Write a full-sphere far-field pattern and report peak directivity",
        "Write the theta=90 degree azimuth cut",
        "Report ring winding number and mode purity",
        "Write the OAM crosstalk matrix",
        "Write a synthesized planar near-field scan",
        "Transform a scan to a far-field pattern",
        "List the six cast presets and their mode sets"};
    for (std::size_t i = 0; i < std::size(commands); ++i)
        app.add_subcommand(commands[i], descriptions[i])->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::string text = "{}";
        if (!config_path.empty())
            text = uca::read_file(config_path);
        uca::RunConfig config = uca::parse_config(text);

        // Output directory precedence: --out, then config, then UCA_OUT_DIR.
        const bool config_has_dir =
            nlohmann::json::parse(text).value("output", nlohmann::json::object())
                .contains("dir");
        if (!out_dir.empty())
            config.output_dir = out_dir;
        else if (!config_has_dir)
            if (const char* env = std::getenv("UCA_OUT_DIR"); env != nullptr && *env != '\0')
                config.output_dir = env;
        if (grid_deg > 0.0)
            config.grid_step_deg = grid_deg;

        return uca::run(command, config, std::cout, quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
