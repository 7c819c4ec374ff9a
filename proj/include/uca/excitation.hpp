// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_EXCITATION_HPP
#define UCA_EXCITATION_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "uca/types.hpp"

namespace uca {

// One complex current weight per element.
using ExcitationVector = std::vector<cplx>;

enum class Normalization {
    none,
    unit_total_power, // sum |w_n|^2 = 1
    unit_peak,        // max |w_n| = 1
};

// Recipe for an equal-amplitude sum of azimuthal modes with common steering.
struct ModeMixSpec {
    std::set<int> modes;                                         // each m in the principal range
    double steering = 0.0;                                       // psi, radians
    Normalization normalization = Normalization::unit_total_power;
};

enum class CastPreset {
    broadcast,   // {0}
    unicast_A,   // {0, +-1, ..., +-5}
    unicast_B,   // {0, +-1, +-2, +-3}
    multicast_A, // {+-1, ..., +-5}
    multicast_B, // {+-3, +-4, +-5}
    multicast_C, // {+-4, +-5}
};

// Weight n = exp(j*m*(phi_n + psi)).  m must lie in the principal range
// -(N/2-1) <= m <= N/2 for even N unless allow_alias is set.
ExcitationVector mode_weights(std::size_t n, int m, double psi, bool allow_alias = false);

// Weight i (1-based) = exp(2j*(i-1)*l*pi/N): the standard DFT step.  Any
// integer l is accepted; values outside the principal range alias modulo N.
ExcitationVector oam_weights(std::size_t n, int l);

// Sum of mode_weights over spec.modes (ascending order), then normalized.
ExcitationVector mix_modes(std::size_t n, const ModeMixSpec& spec);

// Mode set for one of the six named mixtures; psi = 0, unit total power.
ModeMixSpec cast_preset(CastPreset preset);
ModeMixSpec cast_preset(const std::string& name);

CastPreset parse_cast_preset(const std::string& name);
std::string cast_preset_name(CastPreset preset);
const std::vector<CastPreset>& all_cast_presets();

ExcitationVector normalize(ExcitationVector weights, Normalization mode);

// JSON array of [real, imag] pairs.
std::string excitation_to_json(const ExcitationVector& weights);
ExcitationVector excitation_from_json(const std::string& text);

} // namespace uca

#endif
