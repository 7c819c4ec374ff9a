// SPDX-License-Identifier: Apache-2.0

#include "uca/nearfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "uca/errors.hpp"
#include "uca/io_util.hpp"

namespace uca {

namespace {

// Iterative radix-2 FFT with kernel exp(+j*2*pi*m*n/P) (no normalization),
// matching the aperture integral's exp(+j*k.r) sign convention.
void fft_plus(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw invalid_argument("fft_plus: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v)
        p <<= 1;
    return p;
}

void check_uniform_scan(const NearFieldScan& scan) {
    scan.plane.validate();
    const std::size_t total = scan.plane.points_x * scan.plane.points_y;
    if (scan.co.size() != total || scan.cross.size() != total)
        throw invalid_argument("nearfield: sample grids do not match the plane dimensions");
    if (!(scan.frequency > 0.0))
        throw invalid_argument("nearfield: scan frequency must be positive");
}

// Smooth (aperture-centered) plane-wave spectrum of one scan channel on a
// padded P x P wavenumber grid, natural FFT bin order.
std::vector<cplx> channel_spectrum(const NearFieldScan& scan, const std::vector<cplx>& samples,
                                   std::size_t p, double dx, double dy, double x0, double y0) {
    std::vector<cplx> grid(p * p, cplx{0.0, 0.0});
    for (std::size_t iy = 0; iy < scan.plane.points_y; ++iy)
        for (std::size_t ix = 0; ix < scan.plane.points_x; ++ix)
            grid[iy * p + ix] = samples[scan.index(iy, ix)];

    // Row FFTs (over x), then column FFTs (over y).
    std::vector<cplx> tmp(p);
    for (std::size_t iy = 0; iy < p; ++iy) {
        std::copy_n(grid.begin() + static_cast<long>(iy * p), p, tmp.begin());
        fft_plus(tmp);
        std::copy_n(tmp.begin(), p, grid.begin() + static_cast<long>(iy * p));
    }
    for (std::size_t ix = 0; ix < p; ++ix) {
        for (std::size_t iy = 0; iy < p; ++iy)
            tmp[iy] = grid[iy * p + ix];
        fft_plus(tmp);
        for (std::size_t iy = 0; iy < p; ++iy)
            grid[iy * p + ix] = tmp[iy];
    }

    // Per-bin: area element and the phase referencing the aperture origin,
    // so the stored spectrum is smooth and safe to interpolate.
    const double area = dx * dy;
    for (std::size_t m = 0; m < p; ++m) {
        const double mw = m < p / 2 ? static_cast<double>(m)
                                    : static_cast<double>(m) - static_cast<double>(p);
        const double ky = 2.0 * kPi * mw / (static_cast<double>(p) * dy);
        for (std::size_t n = 0; n < p; ++n) {
            const double nw = n < p / 2 ? static_cast<double>(n)
                                        : static_cast<double>(n) - static_cast<double>(p);
            const double kx = 2.0 * kPi * nw / (static_cast<double>(p) * dx);
            grid[m * p + n] *= std::polar(area, kx * x0 + ky * y0);
        }
    }
    return grid;
}

// Bilinear interpolation on the periodic FFT-ordered spectrum.
cplx interp_spectrum(const std::vector<cplx>& spec, std::size_t p, double fx, double fy) {
    const double pd = static_cast<double>(p);
    fx -= std::floor(fx / pd) * pd;
    fy -= std::floor(fy / pd) * pd;
    const std::size_t ix = static_cast<std::size_t>(fx) % p;
    const std::size_t iy = static_cast<std::size_t>(fy) % p;
    const double wx = fx - std::floor(fx);
    const double wy = fy - std::floor(fy);
    const std::size_t ix1 = (ix + 1) % p;
    const std::size_t iy1 = (iy + 1) % p;
    return spec[iy * p + ix] * ((1.0 - wy) * (1.0 - wx)) + spec[iy * p + ix1] * ((1.0 - wy) * wx) +
           spec[iy1 * p + ix] * (wy * (1.0 - wx)) + spec[iy1 * p + ix1] * (wy * wx);
}

FarFieldPattern spectrum_to_pattern(const NearFieldScan& scan, double step_deg,
                                    const std::function<void(double, double, cplx&, cplx&)>& eval) {
    const double k = wavenumber(scan.frequency);
    const double lambda = kSpeedOfLight / scan.frequency;
    const double z0 = scan.plane.standoff_wl * lambda;

    FarFieldPattern out;
    out.grid = DirectionGrid::forward_hemisphere(step_deg);
    out.e_theta.assign(out.grid.rows() * out.grid.cols(), cplx{0.0, 0.0});
    out.e_phi.assign(out.grid.rows() * out.grid.cols(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < out.grid.rows(); ++i) {
        const double theta = out.grid.theta[i];
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        const cplx back_prop = std::polar(1.0, k * ct * z0);
        for (std::size_t j = 0; j < out.grid.cols(); ++j) {
            const double phi = out.grid.phi[j];
            const double kx = k * st * std::cos(phi);
            const double ky = k * st * std::sin(phi);
            cplx fx{0.0, 0.0}, fy{0.0, 0.0};
            eval(kx, ky, fx, fy);
            fx *= back_prop;
            fy *= back_prop;
            const double cp = std::cos(phi);
            const double sp = std::sin(phi);
            const std::size_t idx = out.grid.index(i, j);
            out.e_theta[idx] = fx * cp + fy * sp;
            out.e_phi[idx] = (fx * (-sp) + fy * cp) * ct;
        }
    }
    return out;
}

} // namespace

void PlaneSpec::validate() const {
    if (!(standoff_wl > 0.0))
        throw invalid_argument("PlaneSpec: standoff must be positive");
    if (!(width_x_wl > 0.0) || !(width_y_wl > 0.0))
        throw invalid_argument("PlaneSpec: scan widths must be positive");
    if (points_x < 2 || points_y < 2)
        throw invalid_argument("PlaneSpec: need at least 2 points per axis");
}

double NearFieldScan::x_at(std::size_t ix) const {
    const double lambda = kSpeedOfLight / frequency;
    const double w = plane.width_x_wl * lambda;
    return -w / 2.0 + w * static_cast<double>(ix) / static_cast<double>(plane.points_x - 1);
}

double NearFieldScan::y_at(std::size_t iy) const {
    const double lambda = kSpeedOfLight / frequency;
    const double w = plane.width_y_wl * lambda;
    return -w / 2.0 + w * static_cast<double>(iy) / static_cast<double>(plane.points_y - 1);
}

FieldVec near_field_at(const ArrayGeometry& geometry, const ElementPattern& element,
                       const ExcitationVector& excitation, const Vec3& point) {
    const std::size_t n = geometry.element_count();
    if (excitation.size() != n)
        throw invalid_argument("near_field_at: excitation length mismatch");
    const double k = geometry.wavenumber();
    const bool iso = element.variant == ElementVariant::isotropic;
    FieldVec acc;
    for (std::size_t e = 0; e < n; ++e) {
        const ElementFrame& frame = geometry.element_frame(e);
        const Vec3 sep = point - frame.origin;
        const double r = norm(sep);
        if (!(r > 1e-12))
            throw numeric_error("near_field_at: sample point coincides with an element");
        const cplx s = excitation[e] * std::polar(1.0 / r, -k * r);
        if (iso) {
            // Scalar spherical-wave reduction: recorded in the co channel.
            acc.x += s;
            continue;
        }
        const Vec3 dir = sep * (1.0 / r);
        const FieldVec g = element_field_global(element, frame, dir);
        acc = acc + g * s;
    }
    return acc;
}

NearFieldScan synthesize_near_field(const ArrayGeometry& geometry, const ElementPattern& element,
                                    const ExcitationVector& excitation, const PlaneSpec& plane) {
    plane.validate();
    const double lambda = geometry.wavelength();
    if (!(plane.standoff_wl * lambda >= lambda / 4.0))
        throw invalid_argument("synthesize_near_field: standoff below the lambda/4 "
                               "model-validity floor");
    NearFieldScan scan;
    scan.plane = plane;
    scan.frequency = geometry.frequency();
    scan.co.resize(plane.points_x * plane.points_y);
    scan.cross.resize(plane.points_x * plane.points_y);
    const double z0 = plane.standoff_wl * lambda;
    for (std::size_t iy = 0; iy < plane.points_y; ++iy) {
        for (std::size_t ix = 0; ix < plane.points_x; ++ix) {
            const Vec3 p{scan.x_at(ix), scan.y_at(iy), z0};
            const FieldVec e = near_field_at(geometry, element, excitation, p);
            scan.co[scan.index(iy, ix)] = e.x;
            scan.cross[scan.index(iy, ix)] = e.y;
        }
    }
    return scan;
}

FarFieldPattern nf2ff(const NearFieldScan& scan, double step_deg, std::size_t padding_factor) {
    check_uniform_scan(scan);
    if (padding_factor == 0)
        throw invalid_argument("nf2ff: padding factor must be at least 1");
    const double dx = scan.x_at(1) - scan.x_at(0);
    const double dy = scan.y_at(1) - scan.y_at(0);
    const double x0 = scan.x_at(0);
    const double y0 = scan.y_at(0);
    const std::size_t p =
        next_pow2(padding_factor * std::max(scan.plane.points_x, scan.plane.points_y));

    const std::vector<cplx> fx_spec = channel_spectrum(scan, scan.co, p, dx, dy, x0, y0);
    const std::vector<cplx> fy_spec = channel_spectrum(scan, scan.cross, p, dx, dy, x0, y0);
    const double pd = static_cast<double>(p);

    FarFieldPattern out = spectrum_to_pattern(
        scan, step_deg, [&](double kx, double ky, cplx& fx, cplx& fy) {
            const double bx = kx * pd * dx / (2.0 * kPi);
            const double by = ky * pd * dy / (2.0 * kPi);
            fx = interp_spectrum(fx_spec, p, bx, by);
            fy = interp_spectrum(fy_spec, p, bx, by);
        });
    out.excitation_desc = "nf2ff";
    return out;
}

FarFieldPattern nf2ff_direct(const NearFieldScan& scan, double step_deg) {
    check_uniform_scan(scan);
    const double dx = scan.x_at(1) - scan.x_at(0);
    const double dy = scan.y_at(1) - scan.y_at(0);
    const double area = dx * dy;

    FarFieldPattern out = spectrum_to_pattern(
        scan, step_deg, [&](double kx, double ky, cplx& fx, cplx& fy) {
            cplx ax{0.0, 0.0}, ay{0.0, 0.0};
            for (std::size_t iy = 0; iy < scan.plane.points_y; ++iy) {
                const double y = scan.y_at(iy);
                for (std::size_t ix = 0; ix < scan.plane.points_x; ++ix) {
                    const cplx ph = std::polar(1.0, kx * scan.x_at(ix) + ky * y);
                    ax += scan.co[scan.index(iy, ix)] * ph;
                    ay += scan.cross[scan.index(iy, ix)] * ph;
                }
            }
            fx = ax * area;
            fy = ay * area;
        });
    out.excitation_desc = "nf2ff-direct";
    return out;
}

void export_scan_csv(const NearFieldScan& scan, const std::string& path) {
    check_uniform_scan(scan);
    std::ostringstream out;
    out << "x_mm,y_mm,re_co,im_co,re_cross,im_cross\n";
    for (std::size_t iy = 0; iy < scan.plane.points_y; ++iy) {
        for (std::size_t ix = 0; ix < scan.plane.points_x; ++ix) {
            const std::size_t idx = scan.index(iy, ix);
            out << g9(scan.x_at(ix) * 1e3) << ',' << g9(scan.y_at(iy) * 1e3) << ','
                << g9(scan.co[idx].real()) << ',' << g9(scan.co[idx].imag()) << ','
                << g9(scan.cross[idx].real()) << ',' << g9(scan.cross[idx].imag()) << '\n';
        }
    }
    write_file_atomic(path, out.str());

    nlohmann::json sidecar;
    sidecar["plane"] = {{"standoff_wl", scan.plane.standoff_wl},
                        {"width_x_wl", scan.plane.width_x_wl},
                        {"width_y_wl", scan.plane.width_y_wl},
                        {"points_x", scan.plane.points_x},
                        {"points_y", scan.plane.points_y}};
    sidecar["frequency_ghz"] = scan.frequency / 1e9;
    write_file_atomic(path + ".json", sidecar.dump(2) + "\n");
}

NearFieldScan import_scan_csv(const std::string& path) {
    nlohmann::json sidecar;
    try {
        sidecar = nlohmann::json::parse(read_file(path + ".json"));
    } catch (const nlohmann::json::exception& e) {
        throw format_error("scan sidecar '" + path + ".json': " + e.what());
    }
    NearFieldScan scan;
    try {
        const nlohmann::json& p = sidecar.at("plane");
        scan.plane.standoff_wl = p.at("standoff_wl").get<double>();
        scan.plane.width_x_wl = p.at("width_x_wl").get<double>();
        scan.plane.width_y_wl = p.at("width_y_wl").get<double>();
        scan.plane.points_x = p.at("points_x").get<std::size_t>();
        scan.plane.points_y = p.at("points_y").get<std::size_t>();
        scan.frequency = sidecar.at("frequency_ghz").get<double>() * 1e9;
    } catch (const nlohmann::json::exception& e) {
        throw format_error("scan sidecar '" + path + ".json': " + e.what());
    }
    scan.plane.validate();

    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw format_error("scan '" + path + "': empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "x_mm,y_mm,re_co,im_co,re_cross,im_cross")
        throw format_error("scan '" + path + "': unexpected header '" + line + "'");
    std::size_t count = 0;
    const std::size_t total = scan.plane.points_x * scan.plane.points_y;
    scan.co.resize(total);
    scan.cross.resize(total);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (count >= total)
            throw format_error("scan '" + path + "': more rows than the sidecar grid");
        std::istringstream row(line);
        double v[6];
        char comma;
        for (int c = 0; c < 6; ++c) {
            if (!(row >> v[c]) || (c < 5 && !(row >> comma)))
                throw format_error("scan '" + path + "': bad row at line " +
                                   std::to_string(lineno));
        }
        const std::size_t ix = count % scan.plane.points_x;
        const std::size_t iy = count / scan.plane.points_x;
        if (std::abs(v[0] * 1e-3 - scan.x_at(ix)) > 1e-6 ||
            std::abs(v[1] * 1e-3 - scan.y_at(iy)) > 1e-6)
            throw format_error("scan '" + path + "': sample position at line " +
                               std::to_string(lineno) + " does not match the uniform grid");
        scan.co[count] = cplx(v[2], v[3]);
        scan.cross[count] = cplx(v[4], v[5]);
        ++count;
    }
    if (count != total)
        throw format_error("scan '" + path + "': row count does not match the sidecar grid");
    return scan;
}

RingAlignment best_fit_rotation(const RingSamples& a, const RingSamples& b) {
    if (a.samples.size() != b.samples.size())
        throw invalid_argument("best_fit_rotation: rings must have the same sample count");
    const OamSpectrum sa = azimuthal_spectrum(a);
    const OamSpectrum sb = azimuthal_spectrum(b);
    const std::size_t m = a.samples.size();

    double ea = 0.0, eb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        ea += std::norm(sa.coefficients[i]);
        eb += std::norm(sb.coefficients[i]);
    }
    if (!(ea > 0.0) || !(eb > 0.0))
        throw numeric_error("best_fit_rotation: ring is identically zero");

    // Rotating b by delta multiplies its coefficient b_q by exp(-j*q*delta);
    // the correlation with a is sum_q a_q * conj(b_q) * exp(+j*q*delta).
    RingAlignment best;
    const std::size_t steps = 7200; // 0.05 degree search grid
    for (std::size_t s = 0; s < steps; ++s) {
        const double delta = static_cast<double>(s) * 2.0 * kPi / static_cast<double>(steps);
        cplx c{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
            const int q = sa.q_min + static_cast<int>(i);
            c += sa.coefficients[i] * std::conj(sb.coefficients[i]) *
                 std::polar(1.0, static_cast<double>(q) * delta);
        }
        const double mag = std::abs(c) / std::sqrt(ea * eb);
        if (mag > best.correlation) {
            best.correlation = mag;
            best.rotation = delta;
        }
    }
    return best;
}

} // namespace uca
