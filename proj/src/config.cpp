// SPDX-License-Identifier: Apache-2.0

#include "uca/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uca/errors.hpp"
#include "uca/farfield.hpp"
#include "uca/io_util.hpp"
#include "uca/oam.hpp"

namespace uca {

namespace {

using nlohmann::json;

void check_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw format_error("config: '" + path + "' must be a JSON object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* key : allowed)
            if (item.key() == key)
                ok = true;
        if (!ok)
            throw format_error("config: unknown key '" +
                               (path.empty() ? item.key() : path + "." + item.key()) + "'");
    }
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw format_error("config: key '" + path + "." + key + "' must be a number");
    return j[key].get<double>();
}

std::optional<double> get_opt_number(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        return std::nullopt;
    if (!j[key].is_number())
        throw format_error("config: key '" + path + "." + key + "' must be a number");
    return j[key].get<double>();
}

std::size_t get_count(const json& j, const std::string& path, const char* key,
                      std::size_t fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number_unsigned() || j[key].get<double>() < 1)
        throw format_error("config: key '" + path + "." + key +
                           "' must be a positive integer");
    return j[key].get<std::size_t>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_string())
        throw format_error("config: key '" + path + "." + key + "' must be a string");
    return j[key].get<std::string>();
}

std::string normalization_name(Normalization n) {
    switch (n) {
    case Normalization::none:
        return "none";
    case Normalization::unit_total_power:
        return "unit-total-power";
    case Normalization::unit_peak:
        return "unit-peak";
    }
    return "unit-total-power";
}

Normalization parse_normalization(const std::string& name) {
    if (name == "none")
        return Normalization::none;
    if (name == "unit-total-power")
        return Normalization::unit_total_power;
    if (name == "unit-peak")
        return Normalization::unit_peak;
    throw format_error("config: key 'excitation.normalization' must be one of "
                       "none, unit-total-power, unit-peak");
}

std::string variant_name(ElementVariant v) {
    switch (v) {
    case ElementVariant::isotropic:
        return "isotropic";
    case ElementVariant::cos_power:
        return "cos-power";
    case ElementVariant::analytic_patch:
        return "analytic-patch";
    case ElementVariant::tabulated:
        return "tabulated";
    }
    return "analytic-patch";
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw format_error(std::string("config: not well-formed JSON: ") + e.what());
    }
    check_object(doc, "(root)");
    check_keys(doc, "",
               {"geometry", "element", "excitation", "grid", "ring", "crosstalk", "nearfield",
                "output"});
    RunConfig cfg;

    if (doc.contains("geometry")) {
        const json& g = doc["geometry"];
        check_object(g, "geometry");
        check_keys(g, "geometry", {"elements", "radius_mm", "diameter_mm", "frequency_ghz"});
        cfg.elements = get_count(g, "geometry", "elements", cfg.elements);
        if (g.contains("radius_mm") && g.contains("diameter_mm"))
            throw format_error("config: 'geometry.radius_mm' conflicts with "
                               "'geometry.diameter_mm'; give exactly one");
        if (g.contains("radius_mm"))
            cfg.radius_m = get_number(g, "geometry", "radius_mm", 0.0) * 1e-3;
        else if (g.contains("diameter_mm"))
            cfg.radius_m = get_number(g, "geometry", "diameter_mm", 0.0) * 1e-3 / 2.0;
        cfg.frequency_hz = get_number(g, "geometry", "frequency_ghz", 28.0) * 1e9;
        if (!(cfg.radius_m > 0.0))
            throw format_error("config: geometry radius must be positive");
        if (!(cfg.frequency_hz > 0.0))
            throw format_error("config: 'geometry.frequency_ghz' must be positive");
    }

    if (doc.contains("element")) {
        const json& e = doc["element"];
        check_object(e, "element");
        check_keys(e, "element",
                   {"variant", "hpbw_e_deg", "hpbw_h_deg", "floor_db", "cross_pol", "q_azimuth",
                    "up_gain", "up_exponent_scale", "file"});
        const std::string variant = get_string(e, "element", "variant", "analytic-patch");
        if (variant == "isotropic")
            cfg.element_variant = ElementVariant::isotropic;
        else if (variant == "cos-power")
            cfg.element_variant = ElementVariant::cos_power;
        else if (variant == "analytic-patch")
            cfg.element_variant = ElementVariant::analytic_patch;
        else if (variant == "tabulated")
            cfg.element_variant = ElementVariant::tabulated;
        else
            throw format_error("config: key 'element.variant' must be one of isotropic, "
                               "cos-power, analytic-patch, tabulated");
        cfg.hpbw_e_deg = get_number(e, "element", "hpbw_e_deg", cfg.hpbw_e_deg);
        cfg.hpbw_h_deg = get_number(e, "element", "hpbw_h_deg", cfg.hpbw_h_deg);
        cfg.floor_db = get_opt_number(e, "element", "floor_db");
        cfg.cross_pol = get_opt_number(e, "element", "cross_pol");
        cfg.q_azimuth = get_opt_number(e, "element", "q_azimuth");
        cfg.up_gain = get_opt_number(e, "element", "up_gain");
        cfg.up_exponent_scale = get_opt_number(e, "element", "up_exponent_scale");
        cfg.element_file = get_string(e, "element", "file", "");

        const bool shaped = cfg.element_variant == ElementVariant::cos_power ||
                            cfg.element_variant == ElementVariant::analytic_patch;
        const bool patch = cfg.element_variant == ElementVariant::analytic_patch;
        if (!shaped && (e.contains("hpbw_e_deg") || e.contains("hpbw_h_deg") ||
                        e.contains("floor_db")))
            throw format_error("config: beamwidth/floor keys apply only to the cos-power and "
                               "analytic-patch variants");
        if (!patch && (e.contains("cross_pol") || e.contains("q_azimuth") ||
                       e.contains("up_gain") || e.contains("up_exponent_scale")))
            throw format_error("config: polarization/lobe-shape keys apply only to the "
                               "analytic-patch variant");
        if (cfg.element_variant == ElementVariant::tabulated && cfg.element_file.empty())
            throw format_error("config: 'element.file' is required for the tabulated variant");
        if (cfg.element_variant != ElementVariant::tabulated && !cfg.element_file.empty())
            throw format_error("config: 'element.file' applies only to the tabulated variant");
    }

    if (doc.contains("excitation")) {
        const json& x = doc["excitation"];
        check_object(x, "excitation");
        check_keys(x, "excitation",
                   {"preset", "modes", "steering_deg", "normalization", "oam_l", "weights"});
        int sources = 0;
        if (x.contains("preset"))
            ++sources;
        if (x.contains("modes"))
            ++sources;
        if (x.contains("oam_l"))
            ++sources;
        if (x.contains("weights"))
            ++sources;
        if (sources > 1)
            throw format_error("config: conflicting excitation sources; give exactly one of "
                               "'preset', 'modes', 'oam_l', 'weights'");
        if ((x.contains("steering_deg") || x.contains("normalization")) && !x.contains("modes"))
            throw format_error("config: 'excitation.steering_deg' and "
                               "'excitation.normalization' require 'excitation.modes'");
        if (x.contains("preset")) {
            cfg.source = ExcitationSource::preset;
            cfg.preset = parse_cast_preset(get_string(x, "excitation", "preset", "broadcast"));
        } else if (x.contains("modes")) {
            cfg.source = ExcitationSource::modes;
            if (!x["modes"].is_array() || x["modes"].empty())
                throw format_error("config: key 'excitation.modes' must be a non-empty array "
                                   "of integers");
            for (const auto& m : x["modes"]) {
                if (!m.is_number_integer())
                    throw format_error("config: key 'excitation.modes' must contain integers");
                cfg.modes.push_back(m.get<int>());
            }
            cfg.steering_deg = get_number(x, "excitation", "steering_deg", 0.0);
            cfg.normalization =
                parse_normalization(get_string(x, "excitation", "normalization",
                                               "unit-total-power"));
        } else if (x.contains("oam_l")) {
            cfg.source = ExcitationSource::oam;
            if (!x["oam_l"].is_number_integer())
                throw format_error("config: key 'excitation.oam_l' must be an integer");
            cfg.oam_l = x["oam_l"].get<int>();
        } else if (x.contains("weights")) {
            cfg.source = ExcitationSource::weights;
            if (!x["weights"].is_array() || x["weights"].empty())
                throw format_error("config: key 'excitation.weights' must be a non-empty array "
                                   "of [re, im] pairs");
            cfg.raw_weights = excitation_from_json(x["weights"].dump());
        }
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_object(g, "grid");
        check_keys(g, "grid", {"step_deg"});
        cfg.grid_step_deg = get_number(g, "grid", "step_deg", cfg.grid_step_deg);
        if (!(cfg.grid_step_deg > 0.0))
            throw format_error("config: 'grid.step_deg' must be positive");
    }

    if (doc.contains("ring")) {
        const json& r = doc["ring"];
        check_object(r, "ring");
        check_keys(r, "ring", {"theta_deg", "samples"});
        cfg.ring_theta_deg = get_number(r, "ring", "theta_deg", cfg.ring_theta_deg);
        cfg.ring_samples = get_count(r, "ring", "samples", cfg.ring_samples);
        if (!(cfg.ring_theta_deg > 0.0) || !(cfg.ring_theta_deg < 180.0))
            throw format_error("config: 'ring.theta_deg' must lie strictly inside (0, 180)");
    }

    if (doc.contains("crosstalk")) {
        const json& c = doc["crosstalk"];
        check_object(c, "crosstalk");
        check_keys(c, "crosstalk", {"l_max"});
        if (c.contains("l_max")) {
            if (!c["l_max"].is_number_integer() || c["l_max"].get<int>() < 0)
                throw format_error("config: key 'crosstalk.l_max' must be a non-negative "
                                   "integer");
            cfg.crosstalk_l_max = c["l_max"].get<int>();
        }
    }

    if (doc.contains("nearfield")) {
        const json& n = doc["nearfield"];
        check_object(n, "nearfield");
        check_keys(n, "nearfield",
                   {"standoff_wl", "width_x_wl", "width_y_wl", "points_x", "points_y", "padding",
                    "scan_file"});
        cfg.plane.standoff_wl = get_number(n, "nearfield", "standoff_wl", cfg.plane.standoff_wl);
        cfg.plane.width_x_wl = get_number(n, "nearfield", "width_x_wl", cfg.plane.width_x_wl);
        cfg.plane.width_y_wl = get_number(n, "nearfield", "width_y_wl", cfg.plane.width_y_wl);
        cfg.plane.points_x = get_count(n, "nearfield", "points_x", cfg.plane.points_x);
        cfg.plane.points_y = get_count(n, "nearfield", "points_y", cfg.plane.points_y);
        cfg.nf_padding = get_count(n, "nearfield", "padding", cfg.nf_padding);
        cfg.scan_file = get_string(n, "nearfield", "scan_file", "");
        cfg.plane.validate();
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        check_object(o, "output");
        check_keys(o, "output", {"dir"});
        cfg.output_dir = get_string(o, "output", "dir", cfg.output_dir);
    }

    return cfg;
}

ArrayGeometry RunConfig::make_geometry() const {
    return ArrayGeometry(elements, radius_m, frequency_hz);
}

ElementPattern RunConfig::make_element() const {
    switch (element_variant) {
    case ElementVariant::isotropic:
        return ElementPattern::isotropic();
    case ElementVariant::cos_power: {
        ElementPattern p = fit_cos_power(hpbw_e_deg, hpbw_h_deg);
        if (floor_db)
            p.floor_power = std::pow(10.0, *floor_db / 10.0);
        return p;
    }
    case ElementVariant::analytic_patch: {
        ElementPattern p = fit_analytic_patch(hpbw_e_deg, hpbw_h_deg);
        if (floor_db)
            p.floor_power = std::pow(10.0, *floor_db / 10.0);
        if (cross_pol)
            p.cross_pol = *cross_pol;
        if (q_azimuth)
            p.q_azimuth = *q_azimuth;
        if (up_gain)
            p.up_gain = *up_gain;
        if (up_exponent_scale)
            p.up_exponent_scale = *up_exponent_scale;
        return p;
    }
    case ElementVariant::tabulated:
        return load_tabulated_csv(element_file);
    }
    throw invalid_argument("make_element: unknown variant");
}

ExcitationVector RunConfig::make_excitation() const {
    switch (source) {
    case ExcitationSource::preset:
        return mix_modes(elements, cast_preset(preset));
    case ExcitationSource::modes: {
        ModeMixSpec spec;
        spec.modes.insert(modes.begin(), modes.end());
        spec.steering = deg2rad(steering_deg);
        spec.normalization = normalization;
        return mix_modes(elements, spec);
    }
    case ExcitationSource::oam:
        return normalize(oam_weights(elements, oam_l), Normalization::unit_total_power);
    case ExcitationSource::weights:
        if (raw_weights.size() != elements)
            throw invalid_argument("excitation weights length does not match the element count");
        return raw_weights;
    }
    throw invalid_argument("make_excitation: unknown source");
}

std::string RunConfig::excitation_desc() const {
    switch (source) {
    case ExcitationSource::preset:
        return "preset:" + cast_preset_name(preset);
    case ExcitationSource::modes: {
        std::ostringstream ss;
        ss << "modes:";
        for (std::size_t i = 0; i < modes.size(); ++i)
            ss << (i ? "," : "") << modes[i];
        ss << " steering_deg:" << g9(steering_deg);
        return ss.str();
    }
    case ExcitationSource::oam:
        return "oam_l:" + std::to_string(oam_l);
    case ExcitationSource::weights:
        return "weights:explicit";
    }
    return "";
}

std::string RunConfig::resolved_json() const {
    json j;
    j["geometry"] = {{"elements", elements},
                     {"diameter_mm", 2.0 * radius_m * 1e3},
                     {"frequency_ghz", frequency_hz / 1e9}};
    json e;
    e["variant"] = variant_name(element_variant);
    if (element_variant == ElementVariant::cos_power ||
        element_variant == ElementVariant::analytic_patch) {
        const ElementPattern p = make_element();
        e["hpbw_e_deg"] = hpbw_e_deg;
        e["hpbw_h_deg"] = hpbw_h_deg;
        e["floor_db"] = 10.0 * std::log10(p.floor_power);
        if (element_variant == ElementVariant::analytic_patch) {
            e["cross_pol"] = p.cross_pol;
            e["q_azimuth"] = p.q_azimuth;
            e["up_gain"] = p.up_gain;
            e["up_exponent_scale"] = p.up_exponent_scale;
        }
    }
    if (element_variant == ElementVariant::tabulated)
        e["file"] = element_file;
    j["element"] = e;

    json x;
    switch (source) {
    case ExcitationSource::preset:
        x["preset"] = cast_preset_name(preset);
        break;
    case ExcitationSource::modes:
        x["modes"] = modes;
        x["steering_deg"] = steering_deg;
        x["normalization"] = normalization_name(normalization);
        break;
    case ExcitationSource::oam:
        x["oam_l"] = oam_l;
        break;
    case ExcitationSource::weights: {
        json arr = json::array();
        for (const cplx& w : raw_weights)
            arr.push_back({w.real(), w.imag()});
        x["weights"] = arr;
        break;
    }
    }
    j["excitation"] = x;

    j["grid"] = {{"step_deg", grid_step_deg}};
    j["ring"] = {{"theta_deg", ring_theta_deg}, {"samples", ring_samples}};
    j["crosstalk"] = {{"l_max", crosstalk_l_max}};
    json nf = {{"standoff_wl", plane.standoff_wl}, {"width_x_wl", plane.width_x_wl},
               {"width_y_wl", plane.width_y_wl},   {"points_x", plane.points_x},
               {"points_y", plane.points_y},       {"padding", nf_padding}};
    if (!scan_file.empty())
        nf["scan_file"] = scan_file;
    j["nearfield"] = nf;
    j["output"] = {{"dir", output_dir}};
    return j.dump(2) + "\n";
}

int run(const std::string& command, const RunConfig& config, std::ostream& out, bool quiet) {
    namespace fs = std::filesystem;
    const fs::path dir(config.output_dir);
    auto out_path = [&](const std::string& name) { return (dir / name).string(); };
    auto sidecar = [&](const std::string& stem) {
        write_file_atomic(out_path(stem + "_config.json"), config.resolved_json());
    };
    auto say = [&](const std::string& line) {
        if (!quiet)
            out << line << '\n';
    };

    if (command == "presets") {
        for (CastPreset p : all_cast_presets()) {
            const ModeMixSpec spec = cast_preset(p);
            std::ostringstream line;
            line << cast_preset_name(p) << ": modes {";
            bool first = true;
            for (int m : spec.modes) {
                line << (first ? "" : ", ") << m;
                first = false;
            }
            line << "}";
            if (!quiet)
                out << line.str() << '\n';
        }
        return 0;
    }

    const ArrayGeometry geometry = config.make_geometry();
    const ElementPattern element = config.make_element();
    const ExcitationVector excitation = config.make_excitation();

    if (command == "pattern") {
        FarFieldPattern pat = synthesize_pattern(geometry, element, excitation,
                                                 DirectionGrid::regular(config.grid_step_deg));
        pat.excitation_desc = config.excitation_desc();
        const Directivity d = directivity(pat);
        export_pattern_csv(pat, out_path("pattern.csv"));
        export_pattern_json(pat, out_path("pattern.json"));
        sidecar("pattern");
        say("peak directivity " + g9(d.peak_dbi) + " dBi at theta " +
            g9(rad2deg(d.peak_theta)) + " deg, phi " + g9(rad2deg(d.peak_phi)) + " deg");
        return 0;
    }

    if (command == "cut") {
        FarFieldPattern pat = synthesize_pattern(geometry, element, excitation,
                                                 DirectionGrid::regular(config.grid_step_deg));
        pat.excitation_desc = config.excitation_desc();
        const Cut cut = azimuth_cut(pat, kPi / 2.0);
        export_cut_csv(cut, out_path("cut.csv"));
        sidecar("cut");
        const std::vector<Lobe> lobes = find_lobes(cut, 6.0);
        std::ostringstream line;
        line << "lobes above -6 dB: " << lobes.size();
        for (const Lobe& lobe : lobes)
            line << " [" << g9(lobe.center_deg) << " deg, " << g9(lobe.level_db) << " dB]";
        say(line.str());
        return 0;
    }

    if (command == "oam-spectrum") {
        const double theta = deg2rad(config.ring_theta_deg);
        const std::size_t m = config.ring_samples;
        std::vector<cplx> ring_t(m), ring_p(m);
        double rms_t = 0.0, rms_p = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            const double phi = static_cast<double>(p) * 2.0 * kPi / static_cast<double>(m);
            const FieldSample s = field_at(geometry, element, excitation, theta, phi);
            ring_t[p] = s.e_theta;
            ring_p[p] = s.e_phi;
            rms_t += std::norm(s.e_theta);
            rms_p += std::norm(s.e_phi);
        }
        RingSamples ring{theta, rms_t >= rms_p ? RingComponent::e_theta : RingComponent::e_phi,
                         rms_t >= rms_p ? ring_t : ring_p};
        const OamSpectrum spectrum = azimuthal_spectrum(ring);

        // Power fractions over one full period of coefficients.
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            total += std::norm(spectrum.coefficients[i]);
        std::ostringstream csv;
        csv << "q,re_aq,im_aq,power_fraction\n";
        int q_peak = 0;
        double p_peak = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const int q = spectrum.q_min + static_cast<int>(i);
            const cplx a = spectrum.coefficients[i];
            const double frac = total > 0.0 ? std::norm(a) / total : 0.0;
            if (frac > p_peak) {
                p_peak = frac;
                q_peak = q;
            }
            csv << q << ',' << g9(a.real()) << ',' << g9(a.imag()) << ',' << g9(frac) << '\n';
        }
        write_file_atomic(out_path("oam_spectrum.csv"), csv.str());
        sidecar("oam_spectrum");

        const int target = config.source == ExcitationSource::oam ? config.oam_l : q_peak;
        std::string winding_text;
        try {
            winding_text = std::to_string(winding_number(ring));
        } catch (const numeric_error&) {
            winding_text = "undefined (phase singularity on the ring)";
        }
        say("winding number: " + winding_text);
        say("purity (q=" + std::to_string(target) + "): " + g9(spectrum.purity(target)));
        return 0;
    }

    if (command == "crosstalk") {
        std::vector<int> l_set;
        for (int l = -config.crosstalk_l_max; l <= config.crosstalk_l_max; ++l)
            l_set.push_back(l);
        const CrosstalkMatrix matrix = crosstalk_matrix(
            geometry, element, l_set, deg2rad(config.ring_theta_deg), config.ring_samples);
        export_crosstalk_csv(matrix, out_path("crosstalk.csv"));
        sidecar("crosstalk");
        double worst = 0.0;
        for (std::size_t i = 0; i < matrix.rows.size(); ++i)
            for (std::size_t j = 0; j < matrix.rows[i].size(); ++j)
                if (i != j)
                    worst = std::max(worst, matrix.rows[i][j]);
        say("worst off-diagonal leakage: " + g9(worst));
        return 0;
    }

    if (command == "nearfield") {
        const NearFieldScan scan =
            synthesize_near_field(geometry, element, excitation, config.plane);
        export_scan_csv(scan, out_path("scan.csv"));
        sidecar("nearfield");
        say("wrote " + std::to_string(scan.plane.points_x) + "x" +
            std::to_string(scan.plane.points_y) + " scan at " + g9(scan.plane.standoff_wl) +
            " wavelengths standoff");
        return 0;
    }

    if (command == "nf2ff") {
        std::string scan_path = config.scan_file.empty() ? out_path("scan.csv") : config.scan_file;
        if (!fs::exists(scan_path) && !config.scan_file.empty() &&
            fs::path(config.scan_file).is_relative())
            scan_path = out_path(config.scan_file);
        const NearFieldScan scan = import_scan_csv(scan_path);
        FarFieldPattern pat = nf2ff(scan, config.grid_step_deg, config.nf_padding);
        export_pattern_csv(pat, out_path("nf2ff_pattern.csv"));
        export_pattern_json(pat, out_path("nf2ff_pattern.json"));
        sidecar("nf2ff");
        std::string winding_text;
        try {
            const RingSamples ring = ring_samples(pat, deg2rad(config.ring_theta_deg),
                                                  config.ring_samples, RingComponent::e_theta);
            winding_text = std::to_string(winding_number(ring));
        } catch (const std::exception&) {
            winding_text = "undefined";
        }
        say("transformed pattern written; ring winding number: " + winding_text);
        return 0;
    }

    throw invalid_argument("unknown command '" + command + "'");
}

} // namespace uca
