// SPDX-License-Identifier: Apache-2.0

#include "uca/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "uca/errors.hpp"
#include "uca/io_util.hpp"

namespace uca {

namespace {

constexpr double kAngleTol = 1e-9;

// One term of the ring-array sum.  Shared between array_factor and
// synthesize_pattern so the isotropic reduction is bit-for-bit exact.
inline cplx af_term(double kr, double sin_theta, double phi, double phi_n) {
    return std::polar(1.0, kr * sin_theta * std::cos(phi - phi_n));
}

bool uniform_step(const std::vector<double>& axis, double& step) {
    if (axis.size() < 2)
        return false;
    step = axis[1] - axis[0];
    for (std::size_t i = 1; i < axis.size(); ++i)
        if (std::abs(axis[i] - axis[i - 1] - step) > kAngleTol)
            return false;
    return true;
}

std::vector<double> theta_trapezoid_weights(const std::vector<double>& theta) {
    const std::size_t nt = theta.size();
    std::vector<double> w(nt);
    w.front() = (theta[1] - theta[0]) / 2.0;
    w.back() = (theta[nt - 1] - theta[nt - 2]) / 2.0;
    for (std::size_t i = 1; i + 1 < nt; ++i)
        w[i] = (theta[i + 1] - theta[i - 1]) / 2.0;
    return w;
}

std::vector<double> cut_power(const Cut& cut) {
    std::vector<double> p(cut.phi.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = std::norm(cut.e_theta[i]) + std::norm(cut.e_phi[i]);
    return p;
}

} // namespace

DirectionGrid DirectionGrid::regular(double step_deg) {
    if (!(step_deg > 0.0))
        throw invalid_argument("DirectionGrid: step must be positive");
    const double nt = 180.0 / step_deg;
    const double np = 360.0 / step_deg;
    if (std::abs(nt - std::round(nt)) > 1e-9 || std::abs(np - std::round(np)) > 1e-9)
        throw invalid_argument("DirectionGrid: step must divide 180 and 360 degrees");
    DirectionGrid g;
    const std::size_t rows = static_cast<std::size_t>(std::round(nt)) + 1;
    const std::size_t cols = static_cast<std::size_t>(std::round(np));
    g.theta.resize(rows);
    g.phi.resize(cols);
    for (std::size_t i = 0; i < rows; ++i)
        g.theta[i] = deg2rad(static_cast<double>(i) * step_deg);
    for (std::size_t j = 0; j < cols; ++j)
        g.phi[j] = deg2rad(static_cast<double>(j) * step_deg);
    g.validate();
    return g;
}

DirectionGrid DirectionGrid::forward_hemisphere(double step_deg) {
    DirectionGrid g = regular(step_deg);
    const std::size_t rows = g.theta.size() / 2 + 1; // up to theta = 90 deg
    g.theta.resize(rows);
    return g;
}

bool DirectionGrid::covers_full_sphere() const {
    if (theta.size() < 2 || phi.size() < 2)
        return false;
    if (theta.front() > kAngleTol || std::abs(theta.back() - kPi) > kAngleTol)
        return false;
    double step = 0.0;
    if (!uniform_step(phi, step))
        return false;
    return std::abs(static_cast<double>(phi.size()) * step - 2.0 * kPi) <= 1e-6;
}

void DirectionGrid::validate() const {
    if (theta.size() < 2 || phi.size() < 2)
        throw invalid_argument("DirectionGrid: need at least 2 samples per axis");
    for (std::size_t i = 1; i < theta.size(); ++i)
        if (!(theta[i] > theta[i - 1]))
            throw invalid_argument("DirectionGrid: theta axis must be strictly increasing");
    for (std::size_t j = 1; j < phi.size(); ++j)
        if (!(phi[j] > phi[j - 1]))
            throw invalid_argument("DirectionGrid: phi axis must be strictly increasing");
    if (theta.front() < -kAngleTol || theta.back() > kPi + kAngleTol)
        throw invalid_argument("DirectionGrid: theta must lie within [0, pi]");
    if (phi.front() < -kAngleTol || phi.back() >= 2.0 * kPi - kAngleTol)
        throw invalid_argument("DirectionGrid: phi must lie within [0, 2*pi) "
                               "without the duplicate endpoint");
}

cplx array_factor(const ArrayGeometry& geometry, const ExcitationVector& excitation, double theta,
                  double phi) {
    const std::size_t n = geometry.element_count();
    if (excitation.size() != n)
        throw invalid_argument("array_factor: excitation length does not match element count");
    const double kr = geometry.wavenumber() * geometry.radius();
    const double st = std::sin(theta);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        acc += excitation[i] * af_term(kr, st, phi, geometry.element_azimuth(i));
    return acc;
}

ArrayFactorEvaluator::ArrayFactorEvaluator(const ArrayGeometry& geometry,
                                           const ExcitationVector& excitation)
    : kr_(geometry.wavenumber() * geometry.radius()), weights_(excitation) {
    const std::size_t n = geometry.element_count();
    if (excitation.size() != n)
        throw invalid_argument("ArrayFactorEvaluator: excitation length mismatch");
    cos_phin_.resize(n);
    sin_phin_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = geometry.element_azimuth(i);
        cos_phin_[i] = std::cos(a);
        sin_phin_[i] = std::sin(a);
    }
}

cplx ArrayFactorEvaluator::operator()(double theta, double phi) const {
    const double a = kr_ * std::sin(theta);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double arg = a * (cp * cos_phin_[i] + sp * sin_phin_[i]);
        acc += weights_[i] * cplx(std::cos(arg), std::sin(arg));
    }
    return acc;
}

FieldVec element_field_global(const ElementPattern& element, const ElementFrame& frame,
                              const Vec3& direction) {
    if (element.variant == ElementVariant::isotropic) {
        // Unit co-polarized field along the global theta direction.
        const double theta = std::acos(std::clamp(direction.z, -1.0, 1.0));
        const double phi = std::atan2(direction.y, direction.x);
        const Vec3 th = theta_hat(theta, phi);
        return {cplx(th.x, 0.0), cplx(th.y, 0.0), cplx(th.z, 0.0)};
    }
    const Vec3 xax = frame.vertical;
    const Vec3 zax = frame.boresight;
    const Vec3 yax = cross(zax, xax);
    const Vec3 local{dot(direction, xax), dot(direction, yax), dot(direction, zax)};
    const LocalField f = eval_element(element, local);

    const double ct = std::clamp(local.z, -1.0, 1.0);
    const double php = std::atan2(local.y, local.x);
    const double cp = std::cos(php);
    const double sp = std::sin(php);
    const double st = std::sin(std::acos(ct));
    const Vec3 th_hat_g = xax * (ct * cp) + yax * (ct * sp) + zax * (-st);
    const Vec3 ph_hat_g = xax * (-sp) + yax * cp;
    return {f.e_theta * th_hat_g.x + f.e_phi * ph_hat_g.x,
            f.e_theta * th_hat_g.y + f.e_phi * ph_hat_g.y,
            f.e_theta * th_hat_g.z + f.e_phi * ph_hat_g.z};
}

FieldSample field_at(const ArrayGeometry& geometry, const ElementPattern& element,
                     const ExcitationVector& excitation, double theta, double phi) {
    const std::size_t n = geometry.element_count();
    if (excitation.size() != n)
        throw invalid_argument("field_at: excitation length does not match element count");
    const double kr = geometry.wavenumber() * geometry.radius();
    const double st = std::sin(theta);
    if (element.variant == ElementVariant::isotropic) {
        // Exact array-factor reduction: same term and summation order.
        cplx acc{0.0, 0.0};
        for (std::size_t e = 0; e < n; ++e)
            acc += excitation[e] * af_term(kr, st, phi, geometry.element_azimuth(e));
        return {acc, cplx{0.0, 0.0}};
    }
    const Vec3 d = dir_from_angles(theta, phi);
    const Vec3 th = theta_hat(theta, phi);
    const Vec3 ph = phi_hat(phi);
    cplx eth{0.0, 0.0}, eph{0.0, 0.0};
    for (std::size_t e = 0; e < n; ++e) {
        const cplx term = excitation[e] * af_term(kr, st, phi, geometry.element_azimuth(e));
        const FieldVec ef = element_field_global(element, geometry.element_frame(e), d);
        eth += term * dot(ef, th);
        eph += term * dot(ef, ph);
    }
    return {eth, eph};
}

FarFieldPattern synthesize_pattern(const ArrayGeometry& geometry, const ElementPattern& element,
                                   const ExcitationVector& excitation, const DirectionGrid& grid) {
    grid.validate();
    const std::size_t n = geometry.element_count();
    if (excitation.size() != n)
        throw invalid_argument("synthesize_pattern: excitation length mismatch");

    FarFieldPattern out;
    out.grid = grid;
    out.e_theta.assign(grid.rows() * grid.cols(), cplx{0.0, 0.0});
    out.e_phi.assign(grid.rows() * grid.cols(), cplx{0.0, 0.0});

    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const FieldSample s = field_at(geometry, element, excitation, grid.theta[i], grid.phi[j]);
            const std::size_t idx = grid.index(i, j);
            out.e_theta[idx] = s.e_theta;
            out.e_phi[idx] = s.e_phi;
        }
    }
    return out;
}

double radiated_power(const FarFieldPattern& pattern) {
    const DirectionGrid& g = pattern.grid;
    double dphi = 0.0;
    if (!uniform_step(g.phi, dphi))
        throw invalid_argument("radiated_power: phi axis must be uniform");
    const std::vector<double> wt = theta_trapezoid_weights(g.theta);
    double p = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        const double w = std::sin(g.theta[i]) * wt[i];
        double row = 0.0;
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const std::size_t idx = g.index(i, j);
            row += std::norm(pattern.e_theta[idx]) + std::norm(pattern.e_phi[idx]);
        }
        p += row * w;
    }
    return p * dphi;
}

Directivity directivity(const FarFieldPattern& pattern) {
    if (!pattern.grid.covers_full_sphere())
        throw invalid_argument("directivity: pattern grid must cover the full sphere");
    const double p_rad = radiated_power(pattern);
    if (!(p_rad > 0.0))
        throw numeric_error("directivity: radiated power is zero");
    Directivity d;
    d.dbi.resize(pattern.e_theta.size());
    double best = -1.0;
    for (std::size_t i = 0; i < pattern.grid.rows(); ++i) {
        for (std::size_t j = 0; j < pattern.grid.cols(); ++j) {
            const std::size_t idx = pattern.grid.index(i, j);
            const double u = std::norm(pattern.e_theta[idx]) + std::norm(pattern.e_phi[idx]);
            const double lin = 4.0 * kPi * u / p_rad;
            d.dbi[idx] = 10.0 * std::log10(std::max(lin, 1e-300));
            if (lin > best) {
                best = lin;
                d.peak_itheta = i;
                d.peak_iphi = j;
            }
        }
    }
    d.peak_dbi = 10.0 * std::log10(std::max(best, 1e-300));
    d.peak_theta = pattern.grid.theta[d.peak_itheta];
    d.peak_phi = pattern.grid.phi[d.peak_iphi];
    return d;
}

Cut azimuth_cut(const FarFieldPattern& pattern, double theta) {
    if (theta < -kAngleTol || theta > kPi + kAngleTol)
        throw invalid_argument("azimuth_cut: theta must lie within [0, pi]");
    const std::vector<double>& ax = pattern.grid.theta;
    if (theta < ax.front() - kAngleTol || theta > ax.back() + kAngleTol)
        throw invalid_argument("azimuth_cut: theta outside the pattern grid range");
    theta = std::clamp(theta, ax.front(), ax.back());

    // Bracketing rows and interpolation weight.
    std::size_t i1 = std::upper_bound(ax.begin(), ax.end(), theta) - ax.begin();
    i1 = std::clamp<std::size_t>(i1, 1, ax.size() - 1);
    const std::size_t i0 = i1 - 1;
    const double w = (theta - ax[i0]) / (ax[i1] - ax[i0]);

    Cut cut;
    cut.theta = theta;
    cut.phi = pattern.grid.phi;
    cut.circular = true;
    cut.e_theta.resize(cut.phi.size());
    cut.e_phi.resize(cut.phi.size());
    for (std::size_t j = 0; j < cut.phi.size(); ++j) {
        const std::size_t a = pattern.grid.index(i0, j);
        const std::size_t b = pattern.grid.index(i1, j);
        cut.e_theta[j] = pattern.e_theta[a] * (1.0 - w) + pattern.e_theta[b] * w;
        cut.e_phi[j] = pattern.e_phi[a] * (1.0 - w) + pattern.e_phi[b] * w;
    }
    return cut;
}

std::vector<Lobe> find_lobes(const Cut& cut, double threshold_db) {
    const std::size_t m = cut.phi.size();
    if (m < 8)
        throw invalid_argument("find_lobes: cut needs at least 8 samples");
    const std::vector<double> p = cut_power(cut);
    const double pmax = *std::max_element(p.begin(), p.end());
    if (!(pmax > 0.0))
        return {};
    const double floor = pmax * std::pow(10.0, -threshold_db / 10.0);

    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j < m; ++j) {
        if (!cut.circular && (j == 0 || j + 1 == m))
            continue;
        const std::size_t prev = (j + m - 1) % m;
        const std::size_t next = (j + 1) % m;
        if (p[j] > p[prev] && p[j] >= p[next] && p[j] >= floor)
            peaks.push_back(j);
    }
    // Merge maxima closer than one grid step (adjacent indices).
    std::vector<std::size_t> merged;
    for (std::size_t idx : peaks) {
        if (!merged.empty()) {
            const std::size_t last = merged.back();
            const bool adjacent = idx - last <= 1 || (cut.circular && last == 0 && idx + 1 == m);
            if (adjacent) {
                if (p[idx] > p[last])
                    merged.back() = idx;
                continue;
            }
        }
        merged.push_back(idx);
    }
    if (cut.circular && merged.size() > 1 && merged.front() == 0 && merged.back() + 1 == m) {
        if (p[merged.back()] > p[merged.front()])
            merged.front() = merged.back();
        merged.pop_back();
    }

    std::vector<Lobe> lobes;
    for (std::size_t j : merged) {
        Lobe lobe;
        lobe.center_deg = rad2deg(cut.phi[j]);
        lobe.level_db = 10.0 * std::log10(p[j] / pmax);

        // Half-power width about this lobe's own peak, linear interpolation.
        const double half = p[j] / 2.0;
        double width = 0.0;
        bool found = true;
        for (int dir = -1; dir <= 1; dir += 2) {
            double span = 0.0;
            std::size_t cur = j;
            bool crossed = false;
            for (std::size_t step = 0; step < m; ++step) {
                if (!cut.circular && ((dir < 0 && cur == 0) || (dir > 0 && cur + 1 == m)))
                    break;
                const std::size_t nxt = cut.circular ? (cur + (dir > 0 ? 1 : m - 1)) % m
                                                     : cur + static_cast<std::size_t>(dir);
                const double d_ang = std::abs(cut.phi[nxt] - cut.phi[cur]);
                const double gap = cut.circular ? std::min(d_ang, 2.0 * kPi - d_ang) : d_ang;
                if (p[nxt] <= half) {
                    const double t = (p[cur] - half) / (p[cur] - p[nxt]);
                    span += gap * t;
                    crossed = true;
                    break;
                }
                span += gap;
                cur = nxt;
                if (cut.circular && cur == j)
                    break;
            }
            if (!crossed)
                found = false;
            width += span;
        }
        lobe.width_deg = found ? rad2deg(width) : 360.0;
        lobes.push_back(lobe);
    }
    std::sort(lobes.begin(), lobes.end(), [](const Lobe& a, const Lobe& b) {
        if (a.level_db != b.level_db)
            return a.level_db > b.level_db;
        return a.center_deg < b.center_deg;
    });
    return lobes;
}

double hpbw(const Cut& cut) {
    const std::size_t m = cut.phi.size();
    if (m < 3)
        throw invalid_argument("hpbw: cut needs at least 3 samples");
    const std::vector<double> p = cut_power(cut);
    const std::size_t jmax = std::max_element(p.begin(), p.end()) - p.begin();
    const double pmax = p[jmax];
    if (!(pmax > 0.0))
        throw numeric_error("hpbw: cut is identically zero");
    const double half = pmax / 2.0;

    double width = 0.0;
    for (int dir = -1; dir <= 1; dir += 2) {
        std::size_t cur = jmax;
        bool crossed = false;
        double span = 0.0;
        for (std::size_t step = 0; step + 1 < m; ++step) {
            if (!cut.circular && ((dir < 0 && cur == 0) || (dir > 0 && cur + 1 == m)))
                break;
            const std::size_t nxt = cut.circular ? (cur + (dir > 0 ? 1 : m - 1)) % m
                                                 : cur + static_cast<std::size_t>(dir);
            const double d_ang = std::abs(cut.phi[nxt] - cut.phi[cur]);
            const double gap = cut.circular ? std::min(d_ang, 2.0 * kPi - d_ang) : d_ang;
            if (p[nxt] <= half) {
                const double t = (p[cur] - half) / (p[cur] - p[nxt]);
                span += gap * t;
                crossed = true;
                break;
            }
            span += gap;
            cur = nxt;
        }
        if (!crossed)
            throw numeric_error("hpbw: no half-power crossing (quasi-constant cut); "
                                "beamwidth undefined");
        width += span;
    }
    return rad2deg(width);
}

FarFieldPattern rotate_pattern(const FarFieldPattern& pattern, double delta_phi) {
    const DirectionGrid& g = pattern.grid;
    const std::size_t np = g.cols();
    FarFieldPattern out;
    out.grid = g;
    out.excitation_desc = pattern.excitation_desc;
    out.e_theta.resize(pattern.e_theta.size());
    out.e_phi.resize(pattern.e_phi.size());

    double step = 0.0;
    const bool uniform = uniform_step(g.phi, step);
    const double ratio = uniform ? delta_phi / step : 0.0;
    if (uniform && std::abs(ratio - std::round(ratio)) < 1e-9) {
        // Pure cyclic re-indexing: new(theta, phi_j) = old(theta, phi_{j-s}).
        const long s = static_cast<long>(std::round(ratio));
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < np; ++j) {
                const long src = ((static_cast<long>(j) - s) % static_cast<long>(np) +
                                  static_cast<long>(np)) %
                                 static_cast<long>(np);
                out.e_theta[g.index(i, j)] = pattern.e_theta[g.index(i, src)];
                out.e_phi[g.index(i, j)] = pattern.e_phi[g.index(i, src)];
            }
        }
        return out;
    }

    // Circular linear interpolation at phi_j - delta_phi.
    for (std::size_t j = 0; j < np; ++j) {
        double a = g.phi[j] - delta_phi;
        a -= std::floor(a / (2.0 * kPi)) * 2.0 * kPi;
        std::size_t j1 = std::upper_bound(g.phi.begin(), g.phi.end(), a) - g.phi.begin();
        const std::size_t j0 = (j1 + np - 1) % np;
        j1 = j1 % np;
        const double a0 = g.phi[j0];
        double gap = g.phi[j1] - a0;
        double off = a - a0;
        if (gap <= 0.0)
            gap += 2.0 * kPi;
        if (off < 0.0)
            off += 2.0 * kPi;
        const double w = off / gap;
        for (std::size_t i = 0; i < g.rows(); ++i) {
            out.e_theta[g.index(i, j)] =
                pattern.e_theta[g.index(i, j0)] * (1.0 - w) + pattern.e_theta[g.index(i, j1)] * w;
            out.e_phi[g.index(i, j)] =
                pattern.e_phi[g.index(i, j0)] * (1.0 - w) + pattern.e_phi[g.index(i, j1)] * w;
        }
    }
    return out;
}

void export_pattern_csv(const FarFieldPattern& pattern, const std::string& path) {
    std::vector<double> dbi;
    if (pattern.grid.covers_full_sphere()) {
        dbi = directivity(pattern).dbi;
    } else {
        // Partial sphere: normalize over the covered region instead.
        const double p_rad = radiated_power(pattern);
        if (!(p_rad > 0.0))
            throw numeric_error("export_pattern_csv: radiated power is zero");
        dbi.resize(pattern.e_theta.size());
        for (std::size_t idx = 0; idx < dbi.size(); ++idx) {
            const double u = std::norm(pattern.e_theta[idx]) + std::norm(pattern.e_phi[idx]);
            dbi[idx] = 10.0 * std::log10(std::max(4.0 * kPi * u / p_rad, 1e-300));
        }
    }
    std::ostringstream out;
    out << "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi,directivity_dbi\n";
    for (std::size_t i = 0; i < pattern.grid.rows(); ++i) {
        for (std::size_t j = 0; j < pattern.grid.cols(); ++j) {
            const std::size_t idx = pattern.grid.index(i, j);
            out << g9(rad2deg(pattern.grid.theta[i])) << ',' << g9(rad2deg(pattern.grid.phi[j]))
                << ',' << g9(pattern.e_theta[idx].real()) << ',' << g9(pattern.e_theta[idx].imag())
                << ',' << g9(pattern.e_phi[idx].real()) << ',' << g9(pattern.e_phi[idx].imag())
                << ',' << g9(dbi[idx]) << '\n';
        }
    }
    write_file_atomic(path, out.str());
}

void export_pattern_json(const FarFieldPattern& pattern, const std::string& path) {
    nlohmann::json j;
    auto axis_deg = [](const std::vector<double>& axis) {
        std::vector<double> out(axis.size());
        for (std::size_t i = 0; i < axis.size(); ++i)
            out[i] = rad2deg(axis[i]);
        return out;
    };
    j["theta_deg"] = axis_deg(pattern.grid.theta);
    j["phi_deg"] = axis_deg(pattern.grid.phi);
    std::vector<double> re_t, im_t, re_p, im_p;
    for (std::size_t idx = 0; idx < pattern.e_theta.size(); ++idx) {
        re_t.push_back(pattern.e_theta[idx].real());
        im_t.push_back(pattern.e_theta[idx].imag());
        re_p.push_back(pattern.e_phi[idx].real());
        im_p.push_back(pattern.e_phi[idx].imag());
    }
    j["re_etheta"] = re_t;
    j["im_etheta"] = im_t;
    j["re_ephi"] = re_p;
    j["im_ephi"] = im_p;
    j["excitation"] = pattern.excitation_desc;
    write_file_atomic(path, j.dump(2) + "\n");
}

void export_cut_csv(const Cut& cut, const std::string& path) {
    const std::vector<double> p = cut_power(cut);
    const double pmax = *std::max_element(p.begin(), p.end());
    if (!(pmax > 0.0))
        throw numeric_error("export_cut_csv: cut is identically zero");

    // Phase column follows the dominant polarization component (by RMS).
    double rms_t = 0.0, rms_p = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        rms_t += std::norm(cut.e_theta[j]);
        rms_p += std::norm(cut.e_phi[j]);
    }
    const std::vector<cplx>& dom = rms_t >= rms_p ? cut.e_theta : cut.e_phi;

    std::ostringstream out;
    out << "phi_deg,mag_db,phase_deg\n";
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double mag_db = 10.0 * std::log10(std::max(p[j] / pmax, 1e-300));
        const double phase = rad2deg(std::arg(dom[j]));
        out << g9(rad2deg(cut.phi[j])) << ',' << g9(mag_db) << ',' << g9(phase) << '\n';
    }
    write_file_atomic(path, out.str());
}

} // namespace uca
