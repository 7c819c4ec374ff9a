// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_CLI_HPP
#define UCA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uca/element.hpp"
#include "uca/excitation.hpp"
#include "uca/geometry.hpp"
#include "uca/nearfield.hpp"

namespace uca {

// Which of the mutually exclusive excitation sources the config selected.
enum class ExcitationSource { preset, modes, oam, weights };

// Fully resolved run configuration (defaults applied, units converted).
struct RunConfig {
    // geometry
    std::size_t elements = 12;
    double radius_m = 19.38e-3 / 2.0;
    double frequency_hz = 28e9;

    // element
    ElementVariant element_variant = ElementVariant::analytic_patch;
    double hpbw_e_deg = 100.0;
    double hpbw_h_deg = 104.0;
    std::optional<double> floor_db;      // override; variant default otherwise
    std::optional<double> cross_pol;     // analytic-patch only
    std::optional<double> q_azimuth;     // analytic-patch only
    std::optional<double> up_gain;       // analytic-patch only
    std::optional<double> up_exponent_scale; // analytic-patch only
    std::string element_file;            // tabulated only

    // excitation
    ExcitationSource source = ExcitationSource::preset;
    CastPreset preset = CastPreset::broadcast;
    std::vector<int> modes;
    double steering_deg = 0.0;
    Normalization normalization = Normalization::unit_total_power;
    int oam_l = 0;
    ExcitationVector raw_weights;

    // analysis / grids
    double grid_step_deg = 1.0;
    double ring_theta_deg = 20.0;
    std::size_t ring_samples = 64;
    int crosstalk_l_max = 5;

    // near field
    PlaneSpec plane;
    std::size_t nf_padding = 4;
    std::string scan_file; // nf2ff input (resolved relative to the output dir
                           // when relative and not found as given)

    // output
    std::string output_dir = "out";

    ArrayGeometry make_geometry() const;
    ElementPattern make_element() const;
    ExcitationVector make_excitation() const;
    std::string excitation_desc() const;
    // Post-defaults config as JSON (the reproducibility sidecar content).
    std::string resolved_json() const;
};

// Parse and validate a JSON config document; unknown keys are rejected.
RunConfig parse_config(const std::string& text);

// Execute one CLI command.  Returns the process exit status; writes data
// files into config.output_dir and human-readable lines to `out` unless
// quiet.  Each run also writes a `<command>_config.json` sidecar with the
// resolved configuration.
int run(const std::string& command, const RunConfig& config, std::ostream& out,
        bool quiet = false);

} // namespace uca

#endif
