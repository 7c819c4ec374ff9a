// SPDX-License-Identifier: Apache-2.0

#include "uca/element.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uca/errors.hpp"
#include "uca/io_util.hpp"

namespace uca {

namespace {

// Real-valued Ludwig-III cos-power lobe about `zax` with the co-polarization
// reference along `xax`, evaluated toward unit direction d.  Power follows
// cos^q(theta') on the forward hemisphere with an elliptical interpolation of
// the exponent between the xz' (qe) and yz' (qh) planes, clipped below at
// `floor_power`; behind the lobe only the floor radiates.  Returns the field
// as a Cartesian 3-vector in the same coordinates as d.
FieldVec lobe(const Vec3& d, const Vec3& zax, const Vec3& xax, double qe, double qh,
              double floor_power, double cross_pol) {
    const Vec3 yax = cross(zax, xax);
    const double dx = dot(d, xax);
    const double dy = dot(d, yax);
    const double dz = dot(d, zax);
    const double ct = std::clamp(dz, -1.0, 1.0);
    const double php = std::atan2(dy, dx);
    const double cp = std::cos(php);
    const double sp = std::sin(php);
    const double q = qe * cp * cp + qh * sp * sp;
    const double power = ct > 0.0 ? std::pow(ct, q) : 0.0;
    const double amp = std::sqrt(std::max(power, floor_power));
    const double thp = std::acos(ct);
    const double cth = std::cos(thp);
    const double sth = std::sin(thp);
    const Vec3 th_hat = xax * (cth * cp) + yax * (cth * sp) + zax * (-sth);
    const Vec3 ph_hat = xax * (-sp) + yax * cp;
    const Vec3 e_co = th_hat * cp + ph_hat * (-sp);
    const Vec3 e_cx = th_hat * sp + ph_hat * cp;
    const Vec3 e = (e_co + e_cx * cross_pol) * amp;
    return {cplx(e.x, 0.0), cplx(e.y, 0.0), cplx(e.z, 0.0)};
}

// Local spherical basis about the element boresight (local z), with phi' = 0
// along the polarization axis (local x).
void local_basis(const Vec3& d, Vec3& th_hat, Vec3& ph_hat) {
    const double ct = std::clamp(d.z, -1.0, 1.0);
    const double php = std::atan2(d.y, d.x);
    const double cp = std::cos(php);
    const double sp = std::sin(php);
    const double st = std::sin(std::acos(ct));
    th_hat = {ct * cp, ct * sp, -st};
    ph_hat = {-sp, cp, 0.0};
}

LocalField project_local(const FieldVec& e, const Vec3& d) {
    Vec3 th_hat, ph_hat;
    local_basis(d, th_hat, ph_hat);
    return {dot(e, th_hat), dot(e, ph_hat)};
}

LocalField eval_tabulated(const ElementPattern& p, const Vec3& d) {
    const double theta = std::acos(std::clamp(d.z, -1.0, 1.0));
    double phi = std::atan2(d.y, d.x);
    if (phi < 0.0)
        phi += 2.0 * kPi;

    const std::size_t nt = p.tab_theta.size();
    const std::size_t np = p.tab_phi.size();
    const double t0 = p.tab_theta.front();
    const double dt = (p.tab_theta.back() - t0) / static_cast<double>(nt - 1);
    const double p0 = p.tab_phi.front();
    const double dp = np > 1 ? p.tab_phi[1] - p.tab_phi[0] : 2.0 * kPi;

    // Clamp in theta (nearest-edge at the poles), wrap in phi.
    double ft = (theta - t0) / dt;
    ft = std::clamp(ft, 0.0, static_cast<double>(nt - 1));
    std::size_t it = std::min(static_cast<std::size_t>(ft), nt - 2);
    const double wt = ft - static_cast<double>(it);

    double fp = (phi - p0) / dp;
    fp -= std::floor(fp / static_cast<double>(np)) * static_cast<double>(np);
    std::size_t ip = static_cast<std::size_t>(fp) % np;
    const double wp = fp - std::floor(fp);
    const std::size_t ip1 = (ip + 1) % np;

    auto at = [&](const std::vector<cplx>& v, std::size_t i, std::size_t j) {
        return v[i * np + j];
    };
    auto interp = [&](const std::vector<cplx>& v) {
        const cplx v00 = at(v, it, ip), v01 = at(v, it, ip1);
        const cplx v10 = at(v, it + 1, ip), v11 = at(v, it + 1, ip1);
        return v00 * ((1.0 - wt) * (1.0 - wp)) + v01 * ((1.0 - wt) * wp) +
               v10 * (wt * (1.0 - wp)) + v11 * (wt * wp);
    };
    return {interp(p.tab_e_theta), interp(p.tab_e_phi)};
}

} // namespace

ElementPattern ElementPattern::isotropic() {
    ElementPattern p;
    p.variant = ElementVariant::isotropic;
    return p;
}

ElementPattern ElementPattern::cos_power(double q_e, double q_h, double floor_power) {
    if (!(q_e >= 0.0) || !(q_h >= 0.0))
        throw invalid_argument("cos_power: exponents must be non-negative");
    if (!(floor_power >= 0.0) || floor_power > 1.0)
        throw invalid_argument("cos_power: floor power must be in [0, 1]");
    ElementPattern p;
    p.variant = ElementVariant::cos_power;
    p.q_e = q_e;
    p.q_h = q_h;
    p.floor_power = floor_power;
    return p;
}

ElementPattern ElementPattern::analytic_patch(double q_e, double q_h) {
    if (!(q_e >= 0.0) || !(q_h >= 0.0))
        throw invalid_argument("analytic_patch: exponents must be non-negative");
    ElementPattern p;
    p.variant = ElementVariant::analytic_patch;
    p.q_e = q_e;
    p.q_h = q_h;
    p.floor_power = 0.002;
    p.cross_pol = 0.08;
    p.q_azimuth = 7.0;
    p.up_gain = 0.80;
    p.up_exponent_scale = 5.0;
    return p;
}

LocalField eval_element(const ElementPattern& pattern, const Vec3& d) {
    const double n = norm(d);
    if (std::abs(n - 1.0) > 1e-6)
        throw invalid_argument("eval_element: direction must be unit-norm");

    switch (pattern.variant) {
    case ElementVariant::isotropic:
        return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    case ElementVariant::cos_power: {
        const FieldVec e = lobe(d, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, pattern.q_e, pattern.q_h,
                                pattern.floor_power, 0.0);
        return project_local(e, d);
    }
    case ElementVariant::analytic_patch: {
        // Outward lobe about the boresight: q_e in the vertical (E) plane, a
        // steeper q_azimuth in the array plane, with the backlobe floor.
        const FieldVec out = lobe(d, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, pattern.q_e,
                                  pattern.q_azimuth, pattern.floor_power, pattern.cross_pol);
        // Narrow broadside lobe along the element vertical (+x locally,
        // global +z): models the patch radiating above the array plane.
        const double s = pattern.up_exponent_scale;
        const FieldVec up = lobe(d, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, s * pattern.q_e,
                                 s * pattern.q_h, 0.0, pattern.cross_pol);
        const FieldVec total = out + up * cplx(pattern.up_gain, 0.0);
        return project_local(total, d);
    }
    case ElementVariant::tabulated:
        return eval_tabulated(pattern, d);
    }
    throw invalid_argument("eval_element: unknown element variant");
}

ElementPattern fit_cos_power(double hpbw_e_deg, double hpbw_h_deg) {
    auto fit = [](double hpbw, const char* plane) {
        if (!(hpbw > 0.0) || hpbw >= 360.0)
            throw invalid_argument(std::string("fit_cos_power: degenerate ") + plane +
                                   "-plane beamwidth");
        if (hpbw >= 180.0)
            throw invalid_argument(std::string("fit_cos_power: ") + plane +
                                   "-plane beamwidth must be below 180 degrees for the "
                                   "cos-power model");
        return std::log(0.5) / std::log(std::cos(deg2rad(hpbw / 2.0)));
    };
    return ElementPattern::cos_power(fit(hpbw_e_deg, "E"), fit(hpbw_h_deg, "H"));
}

ElementPattern fit_analytic_patch(double hpbw_e_deg, double hpbw_h_deg) {
    const ElementPattern fitted = fit_cos_power(hpbw_e_deg, hpbw_h_deg);
    return ElementPattern::analytic_patch(fitted.q_e, fitted.q_h);
}

ElementPattern import_tabulated(const std::vector<double>& theta_deg,
                                const std::vector<double>& phi_deg,
                                const std::vector<cplx>& e_theta, const std::vector<cplx>& e_phi) {
    const std::size_t nt = theta_deg.size();
    const std::size_t np = phi_deg.size();
    if (nt < 2 || np < 2)
        throw format_error("import_tabulated: grid must be at least 2x2");
    if (e_theta.size() != nt * np || e_phi.size() != nt * np)
        throw format_error("import_tabulated: sample count does not match grid dimensions");

    auto check_regular = [](const std::vector<double>& axis, const char* name) {
        const double step = axis[1] - axis[0];
        if (!(step > 0.0))
            throw format_error(std::string("import_tabulated: ") + name +
                               " axis must be strictly increasing");
        for (std::size_t i = 1; i < axis.size(); ++i)
            if (std::abs(axis[i] - axis[i - 1] - step) > 1e-6 * std::max(1.0, std::abs(step)))
                throw format_error(std::string("import_tabulated: ") + name +
                                   " axis is not regular");
        return step;
    };
    check_regular(theta_deg, "theta");
    const double dphi = check_regular(phi_deg, "phi");
    if (std::abs(theta_deg.front()) > 1e-6 || std::abs(theta_deg.back() - 180.0) > 1e-6)
        throw format_error("import_tabulated: theta axis must cover [0, 180] degrees");
    if (std::abs(phi_deg.front()) > 1e-6 ||
        std::abs(phi_deg.back() + dphi - 360.0) > 1e-6)
        throw format_error("import_tabulated: phi axis must cover [0, 360) degrees "
                           "without the duplicate endpoint");

    ElementPattern p;
    p.variant = ElementVariant::tabulated;
    p.tab_theta.resize(nt);
    p.tab_phi.resize(np);
    for (std::size_t i = 0; i < nt; ++i)
        p.tab_theta[i] = deg2rad(theta_deg[i]);
    for (std::size_t j = 0; j < np; ++j)
        p.tab_phi[j] = deg2rad(phi_deg[j]);
    p.tab_e_theta = e_theta;
    p.tab_e_phi = e_phi;
    return p;
}

ElementPattern load_tabulated_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line))
        throw format_error("tabulated pattern '" + path + "': empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi")
        throw format_error("tabulated pattern '" + path + "': unexpected header '" + line + "'");

    std::vector<double> theta_all, phi_all;
    std::vector<cplx> eth, eph;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream row(line);
        double v[6];
        char comma;
        for (int c = 0; c < 6; ++c) {
            if (!(row >> v[c]) || (c < 5 && !(row >> comma)))
                throw format_error("tabulated pattern '" + path + "': bad row at line " +
                                   std::to_string(lineno));
        }
        theta_all.push_back(v[0]);
        phi_all.push_back(v[1]);
        eth.emplace_back(v[2], v[3]);
        eph.emplace_back(v[4], v[5]);
    }
    if (theta_all.empty())
        throw format_error("tabulated pattern '" + path + "': no data rows");

    // Row-major in theta then phi: phi axis repeats within each theta block.
    std::vector<double> phi_axis;
    for (std::size_t i = 0; i < phi_all.size(); ++i) {
        if (i > 0 && std::abs(phi_all[i] - phi_all[0]) < 1e-12 &&
            std::abs(theta_all[i] - theta_all[0]) > 1e-12)
            break;
        phi_axis.push_back(phi_all[i]);
    }
    const std::size_t np = phi_axis.size();
    if (np == 0 || theta_all.size() % np != 0)
        throw format_error("tabulated pattern '" + path + "': irregular grid layout");
    const std::size_t nt = theta_all.size() / np;
    std::vector<double> theta_axis(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        theta_axis[i] = theta_all[i * np];
        for (std::size_t j = 0; j < np; ++j) {
            if (std::abs(theta_all[i * np + j] - theta_axis[i]) > 1e-9 ||
                std::abs(phi_all[i * np + j] - phi_axis[j]) > 1e-9)
                throw format_error("tabulated pattern '" + path +
                                   "': rows are not row-major over a regular grid");
        }
    }
    return import_tabulated(theta_axis, phi_axis, eth, eph);
}

void save_tabulated_csv(const ElementPattern& pattern, const std::string& path) {
    if (pattern.variant != ElementVariant::tabulated)
        throw invalid_argument("save_tabulated_csv: pattern is not tabulated");
    std::ostringstream out;
    out << "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n";
    const std::size_t np = pattern.tab_phi.size();
    for (std::size_t i = 0; i < pattern.tab_theta.size(); ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const cplx t = pattern.tab_e_theta[i * np + j];
            const cplx f = pattern.tab_e_phi[i * np + j];
            out << g9(rad2deg(pattern.tab_theta[i])) << ',' << g9(rad2deg(pattern.tab_phi[j]))
                << ',' << g9(t.real()) << ',' << g9(t.imag()) << ',' << g9(f.real()) << ','
                << g9(f.imag()) << '\n';
        }
    }
    write_file_atomic(path, out.str());
}

} // namespace uca
