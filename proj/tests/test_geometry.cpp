// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "uca/errors.hpp"
#include "uca/geometry.hpp"

using namespace uca;

TEST_CASE("element_azimuths basic values") {
    const std::vector<double> az12 = element_azimuths(12);
    REQUIRE(az12.size() == 12);
    CHECK(az12[0] == 0.0);
    CHECK(az12[3] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(az12[6] == doctest::Approx(kPi).epsilon(1e-15));

    CHECK(element_azimuths(1) == std::vector<double>{0.0});

    const std::vector<double> az4 = element_azimuths(4);
    CHECK(az4[1] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(az4[2] == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(az4[3] == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("element_azimuths are strictly increasing in [0, 2*pi) with uniform spacing") {
    for (std::size_t n : {1u, 2u, 7u, 12u, 64u}) {
        const std::vector<double> az = element_azimuths(n);
        REQUIRE(az.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(az[i] >= 0.0);
            CHECK(az[i] < 2.0 * kPi);
            if (i > 0) {
                CHECK(az[i] > az[i - 1]);
                CHECK(az[i] - az[i - 1] ==
                      doctest::Approx(2.0 * kPi / static_cast<double>(n)).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("element_azimuths rejects N = 0") {
    CHECK_THROWS_AS(element_azimuths(0), invalid_argument);
}

TEST_CASE("wavenumber matches independent evaluation") {
    // k = 2*pi*f/c at 28 GHz.
    const double k28 = wavenumber(28e9);
    CHECK(k28 == doctest::Approx(586.8366061464709).epsilon(1e-12));
    // Wavelength about 10.707 mm.
    CHECK(2.0 * kPi / k28 == doctest::Approx(10.7068735e-3).epsilon(1e-7));
    // f numerically equal to c gives lambda = 1 m, k = 2*pi.
    CHECK(wavenumber(kSpeedOfLight) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("wavenumber is linear in frequency") {
    CHECK(wavenumber(2.0 * 28e9) == doctest::Approx(2.0 * wavenumber(28e9)).epsilon(1e-15));
    CHECK(wavenumber(56e9) / wavenumber(7e9) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("wavenumber rejects non-positive frequency") {
    CHECK_THROWS_AS(wavenumber(0.0), invalid_argument);
    CHECK_THROWS_AS(wavenumber(-1.0), invalid_argument);
}

TEST_CASE("default paper geometry has k*R near 5.686") {
    const ArrayGeometry g(12, 19.38e-3 / 2.0, 28e9);
    CHECK(g.wavenumber() * g.radius() == doctest::Approx(5.6864467).epsilon(1e-7));
    CHECK(g.wavelength() == doctest::Approx(kSpeedOfLight / 28e9).epsilon(1e-15));
}

TEST_CASE("element frames: positions and orientation") {
    const double radius = 19.38e-3 / 2.0;
    const ArrayGeometry g(12, radius, 28e9);

    const ElementFrame& f0 = g.element_frame(0);
    CHECK(f0.boresight.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f0.boresight.y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f0.origin.x == doctest::Approx(radius).epsilon(1e-15));
    CHECK(f0.origin.z == 0.0);

    const ElementFrame& f3 = g.element_frame(3);
    CHECK(f3.boresight.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f3.boresight.y == doctest::Approx(1.0).epsilon(1e-15));

    const ElementFrame& f6 = g.element_frame(6);
    CHECK(f6.boresight.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(f6.boresight.y) < 1e-15);

    for (std::size_t n = 0; n < 12; ++n) {
        const ElementFrame& f = g.element_frame(n);
        CHECK(f.vertical.z == 1.0);
        CHECK(f.vertical.x == 0.0);
        CHECK(norm(f.boresight) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(f.origin.z == 0.0);
        CHECK(norm(f.origin) == doctest::Approx(radius).epsilon(1e-12));
    }
}

TEST_CASE("rotating all frames by 2*pi/N cyclically permutes the frame set") {
    const ArrayGeometry g(12, 9.69e-3, 28e9);
    const double c = std::cos(2.0 * kPi / 12.0);
    const double s = std::sin(2.0 * kPi / 12.0);
    for (std::size_t n = 0; n < 12; ++n) {
        const ElementFrame& a = g.element_frame(n);
        const ElementFrame& b = g.element_frame((n + 1) % 12);
        const Vec3 rotated{a.origin.x * c - a.origin.y * s, a.origin.x * s + a.origin.y * c,
                           a.origin.z};
        CHECK(norm(rotated - b.origin) < 1e-15);
        const Vec3 rb{a.boresight.x * c - a.boresight.y * s, a.boresight.x * s + a.boresight.y * c,
                      0.0};
        CHECK(norm(rb - b.boresight) < 1e-14);
    }
}

TEST_CASE("ArrayGeometry validates constructor arguments") {
    CHECK_THROWS_AS(ArrayGeometry(0, 1.0, 1e9), invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(4, 0.0, 1e9), invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(4, -1.0, 1e9), invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(4, 1.0, 0.0), invalid_argument);
    const ArrayGeometry g(4, 1.0, 1e9);
    CHECK_THROWS_AS(g.element_frame(4), invalid_argument);
    CHECK_THROWS_AS(g.element_azimuth(7), invalid_argument);
}
