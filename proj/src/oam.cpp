// SPDX-License-Identifier: Apache-2.0

#include "uca/oam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uca/errors.hpp"
#include "uca/excitation.hpp"
#include "uca/io_util.hpp"

namespace uca {

namespace {

void check_ring_args(double theta, std::size_t m) {
    if (m < 4)
        throw invalid_argument("ring_samples: need at least 4 samples");
    if (!(theta > 0.0) || !(theta < kPi))
        throw invalid_argument("ring_samples: theta must lie strictly inside (0, pi); "
                               "azimuth is degenerate at the poles");
}

// Distinct coefficient count (the spectrum stores a duplicated +-M/2 endpoint
// for even M; sums run over one full period only).
std::size_t distinct_count(const OamSpectrum& s) {
    const std::size_t n = s.coefficients.size();
    return n % 2 == 0 ? n : n - 1;
}

} // namespace

cplx OamSpectrum::at(int q) const {
    const int idx = q - q_min;
    if (idx < 0 || idx >= static_cast<int>(coefficients.size()))
        throw invalid_argument("OamSpectrum::at: index q=" + std::to_string(q) +
                               " outside the computed range");
    return coefficients[static_cast<std::size_t>(idx)];
}

double OamSpectrum::purity(int l) const {
    double total = 0.0;
    const std::size_t n = distinct_count(*this);
    for (std::size_t i = 0; i < n; ++i)
        total += std::norm(coefficients[i]);
    if (!(total > 0.0))
        throw numeric_error("OamSpectrum::purity: empty spectrum");
    return std::norm(at(l)) / total;
}

RingSamples ring_samples(const FarFieldPattern& pattern, double theta, std::size_t m,
                         RingComponent component) {
    check_ring_args(theta, m);
    const Cut cut = azimuth_cut(pattern, theta);
    const std::vector<double>& ax = cut.phi;
    const std::size_t np = ax.size();

    RingSamples ring;
    ring.theta = theta;
    ring.component = component;
    ring.samples.resize(m);
    for (std::size_t q = 0; q < m; ++q) {
        const double phi = static_cast<double>(q) * 2.0 * kPi / static_cast<double>(m);
        // Circular linear interpolation on the cut's phi axis.
        std::size_t j1 = std::upper_bound(ax.begin(), ax.end(), phi) - ax.begin();
        const std::size_t j0 = (j1 + np - 1) % np;
        j1 = j1 % np;
        double gap = ax[j1] - ax[j0];
        double off = phi - ax[j0];
        if (gap <= 0.0)
            gap += 2.0 * kPi;
        if (off < 0.0)
            off += 2.0 * kPi;
        const double w = off / gap;
        const cplx et = cut.e_theta[j0] * (1.0 - w) + cut.e_theta[j1] * w;
        const cplx ep = cut.e_phi[j0] * (1.0 - w) + cut.e_phi[j1] * w;
        switch (component) {
        case RingComponent::e_theta:
            ring.samples[q] = et;
            break;
        case RingComponent::e_phi:
            ring.samples[q] = ep;
            break;
        case RingComponent::total:
            ring.samples[q] = et + ep;
            break;
        }
    }
    return ring;
}

RingSamples ring_samples(const std::function<cplx(double)>& field, double theta, std::size_t m,
                         RingComponent component) {
    check_ring_args(theta, m);
    RingSamples ring;
    ring.theta = theta;
    ring.component = component;
    ring.samples.resize(m);
    for (std::size_t q = 0; q < m; ++q)
        ring.samples[q] = field(static_cast<double>(q) * 2.0 * kPi / static_cast<double>(m));
    return ring;
}

OamSpectrum azimuthal_spectrum(const RingSamples& ring) {
    const std::size_t m = ring.samples.size();
    if (m < 4)
        throw invalid_argument("azimuthal_spectrum: ring must hold at least 4 samples");
    OamSpectrum s;
    const int half = static_cast<int>(m / 2);
    s.q_min = -half;
    const int q_max = half; // duplicated endpoint for even M
    for (int q = s.q_min; q <= q_max; ++q) {
        cplx a{0.0, 0.0};
        for (std::size_t p = 0; p < m; ++p) {
            const double phi = static_cast<double>(p) * 2.0 * kPi / static_cast<double>(m);
            a += ring.samples[p] * std::polar(1.0, -static_cast<double>(q) * phi);
        }
        s.coefficients.push_back(a / static_cast<double>(m));
    }
    return s;
}

int winding_number(const RingSamples& ring) {
    const std::size_t m = ring.samples.size();
    if (m < 4)
        throw invalid_argument("winding_number: ring must hold at least 4 samples");
    double max_mag = 0.0, min_mag = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        const double mag = std::abs(ring.samples[p]);
        if (p == 0 || mag < min_mag)
            min_mag = mag;
        if (mag > max_mag)
            max_mag = mag;
    }
    if (!(min_mag > 1e-9 * max_mag))
        throw numeric_error("winding_number: near-zero sample on the ring "
                            "(phase singularity); winding undefined");
    double total = 0.0;
    for (std::size_t p = 0; p < m; ++p)
        total += std::arg(ring.samples[(p + 1) % m] / ring.samples[p]);
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

CrosstalkMatrix crosstalk_matrix(const ArrayGeometry& geometry, const ElementPattern& element,
                                 const std::vector<int>& l_set, double theta_ring, std::size_t m) {
    const int half_n = static_cast<int>(geometry.element_count()) / 2;
    int max_abs_l = 0;
    for (int l : l_set) {
        if (std::abs(l) > half_n)
            throw invalid_argument("crosstalk_matrix: |l| must not exceed N/2");
        max_abs_l = std::max(max_abs_l, std::abs(l));
    }
    if (l_set.empty())
        throw invalid_argument("crosstalk_matrix: l_set must be non-empty");
    if (m < 2 * static_cast<std::size_t>(max_abs_l) + 2)
        throw invalid_argument("crosstalk_matrix: M must be at least 2*max|l|+2");
    check_ring_args(theta_ring, m);

    CrosstalkMatrix out;
    out.l_set = l_set;
    for (int l : l_set) {
        const ExcitationVector w =
            normalize(oam_weights(geometry.element_count(), l), Normalization::unit_total_power);
        // Exact ring evaluation (no grid interpolation): both polarization
        // components contribute to the power spectrum.
        std::vector<cplx> ring_t(m), ring_p(m);
        for (std::size_t p = 0; p < m; ++p) {
            const double phi = static_cast<double>(p) * 2.0 * kPi / static_cast<double>(m);
            const FieldSample s = field_at(geometry, element, w, theta_ring, phi);
            ring_t[p] = s.e_theta;
            ring_p[p] = s.e_phi;
        }
        RingSamples rt{theta_ring, RingComponent::e_theta, ring_t};
        RingSamples rp{theta_ring, RingComponent::e_phi, ring_p};
        const OamSpectrum st = azimuthal_spectrum(rt);
        const OamSpectrum sp = azimuthal_spectrum(rp);

        double total = 0.0;
        const std::size_t nd = m; // distinct coefficients per component
        for (std::size_t i = 0; i < nd; ++i)
            total += std::norm(st.coefficients[i]) + std::norm(sp.coefficients[i]);
        std::vector<double> row;
        for (int lp : l_set) {
            const double num = std::norm(st.at(lp)) + std::norm(sp.at(lp));
            row.push_back(total > 0.0 ? num / total : 0.0);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

void export_crosstalk_csv(const CrosstalkMatrix& matrix, const std::string& path) {
    std::ostringstream out;
    out << "l";
    for (int l : matrix.l_set)
        out << ",l=" << l;
    out << '\n';
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        out << "l=" << matrix.l_set[i];
        for (double v : matrix.rows[i])
            out << ',' << g9(v);
        out << '\n';
    }
    write_file_atomic(path, out.str());
}

} // namespace uca
