// SPDX-License-Identifier: Apache-2.0

#include "uca/excitation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "uca/errors.hpp"
#include "uca/geometry.hpp"

namespace uca {

namespace {

// Principal mode range of a UCA: one full residue system mod N.  For even N
// this is -(N/2-1) .. N/2; for odd N, -(N-1)/2 .. (N-1)/2.
bool in_principal_range(std::size_t n, int m) {
    const int ni = static_cast<int>(n);
    if (ni % 2 == 0)
        return m >= -(ni / 2 - 1) && m <= ni / 2;
    return m >= -(ni - 1) / 2 && m <= (ni - 1) / 2;
}

} // namespace

ExcitationVector mode_weights(std::size_t n, int m, double psi, bool allow_alias) {
    if (n == 0)
        throw invalid_argument("mode_weights: element count must be at least 1");
    if (!allow_alias && !in_principal_range(n, m))
        throw invalid_argument("mode_weights: mode m=" + std::to_string(m) +
                               " outside the principal range for N=" + std::to_string(n) +
                               " (pass allow_alias to use aliased modes)");
    ExcitationVector w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi_n = static_cast<double>(i) * 2.0 * kPi / static_cast<double>(n);
        w[i] = std::polar(1.0, static_cast<double>(m) * (phi_n + psi));
    }
    return w;
}

ExcitationVector oam_weights(std::size_t n, int l) {
    if (n == 0)
        throw invalid_argument("oam_weights: element count must be at least 1");
    ExcitationVector w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = std::polar(1.0, 2.0 * static_cast<double>(i) * static_cast<double>(l) * kPi /
                                   static_cast<double>(n));
    return w;
}

ExcitationVector normalize(ExcitationVector weights, Normalization mode) {
    switch (mode) {
    case Normalization::none:
        return weights;
    case Normalization::unit_total_power: {
        double p = 0.0;
        for (const cplx& w : weights)
            p += std::norm(w);
        if (!(p > 0.0))
            throw invalid_argument("normalize: zero-power excitation");
        const double s = 1.0 / std::sqrt(p);
        for (cplx& w : weights)
            w *= s;
        return weights;
    }
    case Normalization::unit_peak: {
        double peak = 0.0;
        for (const cplx& w : weights)
            peak = std::max(peak, std::abs(w));
        if (!(peak > 0.0))
            throw invalid_argument("normalize: zero excitation");
        for (cplx& w : weights)
            w /= peak;
        return weights;
    }
    }
    throw invalid_argument("normalize: unknown normalization mode");
}

ExcitationVector mix_modes(std::size_t n, const ModeMixSpec& spec) {
    if (spec.modes.empty())
        throw invalid_argument("mix_modes: mode set must be non-empty");
    ExcitationVector sum(n, cplx{0.0, 0.0});
    // std::set iterates ascending, which fixes the summation order.
    for (int m : spec.modes) {
        const ExcitationVector wm = mode_weights(n, m, spec.steering);
        for (std::size_t i = 0; i < n; ++i)
            sum[i] += wm[i];
    }
    return normalize(std::move(sum), spec.normalization);
}

ModeMixSpec cast_preset(CastPreset preset) {
    ModeMixSpec spec;
    spec.steering = 0.0;
    spec.normalization = Normalization::unit_total_power;
    switch (preset) {
    case CastPreset::broadcast:
        spec.modes = {0};
        break;
    case CastPreset::unicast_A:
        spec.modes = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
        break;
    case CastPreset::unicast_B:
        spec.modes = {0, 1, -1, 2, -2, 3, -3};
        break;
    case CastPreset::multicast_A:
        spec.modes = {1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
        break;
    case CastPreset::multicast_B:
        spec.modes = {3, -3, 4, -4, 5, -5};
        break;
    case CastPreset::multicast_C:
        spec.modes = {4, -4, 5, -5};
        break;
    }
    if (spec.modes.empty())
        throw invalid_argument("cast_preset: unknown preset");
    return spec;
}

ModeMixSpec cast_preset(const std::string& name) { return cast_preset(parse_cast_preset(name)); }

CastPreset parse_cast_preset(const std::string& name) {
    if (name == "broadcast")
        return CastPreset::broadcast;
    if (name == "unicast-A")
        return CastPreset::unicast_A;
    if (name == "unicast-B")
        return CastPreset::unicast_B;
    if (name == "multicast-A")
        return CastPreset::multicast_A;
    if (name == "multicast-B")
        return CastPreset::multicast_B;
    if (name == "multicast-C")
        return CastPreset::multicast_C;
    throw invalid_argument("unknown preset name '" + name +
                           "' (expected broadcast, unicast-A, unicast-B, multicast-A, "
                           "multicast-B, or multicast-C)");
}

std::string cast_preset_name(CastPreset preset) {
    switch (preset) {
    case CastPreset::broadcast:
        return "broadcast";
    case CastPreset::unicast_A:
        return "unicast-A";
    case CastPreset::unicast_B:
        return "unicast-B";
    case CastPreset::multicast_A:
        return "multicast-A";
    case CastPreset::multicast_B:
        return "multicast-B";
    case CastPreset::multicast_C:
        return "multicast-C";
    }
    throw invalid_argument("cast_preset_name: unknown preset");
}

const std::vector<CastPreset>& all_cast_presets() {
    static const std::vector<CastPreset> presets = {
        CastPreset::broadcast,   CastPreset::unicast_A,   CastPreset::unicast_B,
        CastPreset::multicast_A, CastPreset::multicast_B, CastPreset::multicast_C,
    };
    return presets;
}

std::string excitation_to_json(const ExcitationVector& weights) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& w : weights)
        arr.push_back({w.real(), w.imag()});
    return arr.dump();
}

ExcitationVector excitation_from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("excitation_from_json: ") + e.what());
    }
    if (!arr.is_array() || arr.empty())
        throw format_error("excitation_from_json: expected a non-empty array of [re, im] pairs");
    ExcitationVector w;
    w.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw format_error("excitation_from_json: each entry must be a [re, im] number pair");
        w.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return w;
}

} // namespace uca
