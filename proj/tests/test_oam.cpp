// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "uca/errors.hpp"
#include "uca/farfield.hpp"
#include "uca/oam.hpp"

using namespace uca;

namespace {

const ArrayGeometry& paper_geometry() {
    static const ArrayGeometry g(12, 19.38e-3 / 2.0, 28e9);
    return g;
}

} // namespace

TEST_CASE("ring_samples of analytic fields") {
    const RingSamples flat =
        ring_samples([](double) { return cplx(2.0, -1.0); }, deg2rad(20.0), 16);
    REQUIRE(flat.samples.size() == 16);
    for (const cplx& s : flat.samples)
        CHECK(std::abs(s - cplx(2.0, -1.0)) < 1e-15);

    const RingSamples spiral =
        ring_samples([](double phi) { return std::polar(1.0, 2.0 * phi); }, deg2rad(20.0), 16);
    for (std::size_t p = 0; p < 16; ++p) {
        const double phi = 2.0 * kPi * static_cast<double>(p) / 16.0;
        CHECK(std::abs(spiral.samples[p] - std::polar(1.0, 2.0 * phi)) < 1e-14);
    }
}

TEST_CASE("ring_samples validates theta and the sample count") {
    const auto f = [](double) { return cplx(1.0, 0.0); };
    CHECK_THROWS_AS(ring_samples(f, 0.0, 16), invalid_argument);
    CHECK_THROWS_AS(ring_samples(f, kPi, 16), invalid_argument);
    CHECK_THROWS_AS(ring_samples(f, deg2rad(20.0), 3), invalid_argument);
    CHECK_NOTHROW(ring_samples(f, deg2rad(20.0), 4));
}

TEST_CASE("azimuthal_spectrum isolates a pure helical mode") {
    const RingSamples ring =
        ring_samples([](double phi) { return std::polar(1.0, 2.0 * phi); }, deg2rad(20.0), 16);
    const OamSpectrum spec = azimuthal_spectrum(ring);
    CHECK(std::abs(spec.at(2) - cplx(1.0, 0.0)) < 1e-13);
    for (int q = spec.q_min; q < spec.q_min + static_cast<int>(spec.coefficients.size()); ++q)
        if (q != 2)
            CHECK(std::abs(spec.at(q)) < 1e-12);
    CHECK(spec.purity(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("azimuthal_spectrum satisfies Parseval's identity") {
    RingSamples ring;
    ring.theta = deg2rad(20.0);
    const std::size_t m = 24;
    for (std::size_t p = 0; p < m; ++p) {
        const double phi = 2.0 * kPi * static_cast<double>(p) / static_cast<double>(m);
        ring.samples.push_back(std::polar(1.0, 3.0 * phi) + cplx(0.3, 0.1) * std::polar(1.0, -phi) +
                               cplx(0.05, 0.0));
    }
    const OamSpectrum spec = azimuthal_spectrum(ring);

    double time_power = 0.0;
    for (const cplx& s : ring.samples)
        time_power += std::norm(s);
    time_power /= static_cast<double>(m);

    // Sum over the M distinct coefficients (skip the duplicated endpoint).
    double spec_power = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        spec_power += std::norm(spec.coefficients[i]);

    CHECK(spec_power == doctest::Approx(time_power).epsilon(1e-10));
}

TEST_CASE("winding_number of analytic rings") {
    const double th = deg2rad(20.0);
    CHECK(winding_number(ring_samples([](double phi) { return std::polar(1.0, phi); }, th, 32)) ==
          1);
    CHECK(winding_number(ring_samples([](double) { return cplx(1.0, 0.5); }, th, 32)) == 0);
    CHECK(winding_number(ring_samples(
              [](double phi) { return std::polar(2.0, -2.0 * phi + 0.3); }, th, 32)) == -2);

    // Conjugation flips the sign.
    RingSamples ring = ring_samples([](double phi) { return std::polar(1.0, phi); }, th, 32);
    for (cplx& s : ring.samples)
        s = std::conj(s);
    CHECK(winding_number(ring) == -1);

    // A near-zero sample makes the phase walk ill-conditioned.
    RingSamples bad = ring;
    bad.samples[5] = cplx(1e-300, 0.0);
    CHECK_THROWS_AS(winding_number(bad), numeric_error);
}

TEST_CASE("spectrum shift theorem: rotating the ring phases the coefficients") {
    const double th = deg2rad(20.0);
    const std::size_t m = 24;
    const auto f = [](double phi) {
        return std::polar(1.0, 2.0 * phi) + cplx(0.4, 0.2) * std::polar(1.0, -phi);
    };
    const OamSpectrum base = azimuthal_spectrum(ring_samples(f, th, m));

    // Rotate by exactly one sample spacing.
    const double dphi = 2.0 * kPi / static_cast<double>(m);
    const OamSpectrum shifted =
        azimuthal_spectrum(ring_samples([&](double phi) { return f(phi + dphi); }, th, m));
    for (int q = base.q_min; q < base.q_min + static_cast<int>(m); ++q) {
        const cplx expect = base.at(q) * std::polar(1.0, q * dphi);
        CHECK(std::abs(shifted.at(q) - expect) < 1e-12);
    }
}

TEST_CASE("synthesized OAM ring is dominated by its own charge") {
    const ArrayGeometry& g = paper_geometry();
    const FarFieldPattern pat = synthesize_pattern(g, ElementPattern::isotropic(),
                                                   oam_weights(12, 1), DirectionGrid::regular(1.0));
    const RingSamples ring = ring_samples(pat, deg2rad(20.0), 64, RingComponent::e_theta);
    const OamSpectrum spec = azimuthal_spectrum(ring);
    CHECK(spec.purity(1) >= 0.9);
    CHECK(winding_number(ring) == 1);
}

TEST_CASE("ring magnitudes are invariant under 2*pi/12 rotation") {
    const ArrayGeometry& g = paper_geometry();
    for (int l : {1, -2, 4}) {
        const ExcitationVector w = oam_weights(12, l);
        // M divisible by 12 so a 30-degree shift is an integer sample offset.
        const std::size_t m = 48;
        std::vector<double> mags(m);
        for (std::size_t p = 0; p < m; ++p) {
            const double phi = 2.0 * kPi * static_cast<double>(p) / static_cast<double>(m);
            const FieldSample s =
                field_at(g, ElementPattern::isotropic(), w, deg2rad(20.0), phi);
            mags[p] = std::abs(s.e_theta);
        }
        for (std::size_t p = 0; p < m; ++p)
            CHECK(std::abs(mags[p] - mags[(p + 4) % m]) < 1e-11 * 12.0);
    }
}

TEST_CASE("isotropic crosstalk matrix is numerically diagonal") {
    const ArrayGeometry& g = paper_geometry();
    std::vector<int> l_set;
    for (int l = -5; l <= 5; ++l)
        l_set.push_back(l);
    const CrosstalkMatrix ct =
        crosstalk_matrix(g, ElementPattern::isotropic(), l_set, deg2rad(20.0), 64);
    REQUIRE(ct.rows.size() == l_set.size());
    for (std::size_t i = 0; i < l_set.size(); ++i) {
        REQUIRE(ct.rows[i].size() == l_set.size());
        double sum = 0.0;
        for (std::size_t j = 0; j < l_set.size(); ++j) {
            sum += ct.rows[i][j];
            if (i != j)
                CHECK(ct.rows[i][j] < 1e-10);
        }
        CHECK(sum <= 1.0 + 1e-12);
        CHECK(ct.rows[i][i] > 0.999);
    }
}

TEST_CASE("crosstalk of the singleton set is the 1x1 identity") {
    const CrosstalkMatrix ct =
        crosstalk_matrix(paper_geometry(), ElementPattern::isotropic(), {0}, deg2rad(20.0), 64);
    REQUIRE(ct.rows.size() == 1);
    REQUIRE(ct.rows[0].size() == 1);
    CHECK(ct.rows[0][0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("crosstalk_matrix validates its preconditions") {
    const ArrayGeometry& g = paper_geometry();
    CHECK_THROWS_AS(crosstalk_matrix(g, ElementPattern::isotropic(), {7}, deg2rad(20.0), 64),
                    invalid_argument);
    CHECK_THROWS_AS(crosstalk_matrix(g, ElementPattern::isotropic(), {-5, 5}, deg2rad(20.0), 8),
                    invalid_argument);
    CHECK_THROWS_AS(crosstalk_matrix(g, ElementPattern::isotropic(), {}, deg2rad(20.0), 64),
                    invalid_argument);
}
