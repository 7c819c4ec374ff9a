// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "uca/errors.hpp"
#include "uca/excitation.hpp"
#include "uca/geometry.hpp"

using namespace uca;

namespace {
cplx inner(const ExcitationVector& a, const ExcitationVector& b) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}
} // namespace

TEST_CASE("mode_weights examples") {
    const ExcitationVector w0 = mode_weights(12, 0, 0.0);
    for (const cplx& w : w0) {
        CHECK(w.real() == 1.0);
        CHECK(w.imag() == 0.0);
    }

    const ExcitationVector w2 = mode_weights(4, 2, 0.0);
    CHECK(w2[0].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w2[1].real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(w2[2].real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w2[3].real() == doctest::Approx(-1.0).epsilon(1e-15));

    const ExcitationVector w1 = mode_weights(12, 1, kPi / 6.0);
    CHECK(w1[0].real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(w1[0].imag() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mode_weights magnitudes are exactly unit") {
    const ExcitationVector w = mode_weights(12, 5, 0.37);
    for (const cplx& x : w)
        CHECK(std::abs(x) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mode_weights enforces the principal mode range") {
    CHECK_THROWS_AS(mode_weights(12, 7, 0.0), invalid_argument);
    CHECK_THROWS_AS(mode_weights(12, -6, 0.0), invalid_argument);
    CHECK_NOTHROW(mode_weights(12, 6, 0.0));
    CHECK_NOTHROW(mode_weights(12, -5, 0.0));
    // Aliased modes only behind the explicit flag.
    CHECK_NOTHROW(mode_weights(12, 7, 0.0, true));
    const ExcitationVector a = mode_weights(12, 7, 0.0, true);
    const ExcitationVector b = mode_weights(12, -5, 0.0);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-14);
}

TEST_CASE("DFT orthogonality of the mode basis") {
    for (int m = -5; m <= 6; ++m) {
        for (int mp = -5; mp <= 6; ++mp) {
            const cplx ip = inner(mode_weights(12, m, 0.0), mode_weights(12, mp, 0.0));
            if (m == mp)
                CHECK(std::abs(ip - cplx(12.0, 0.0)) < 1e-12);
            else
                CHECK(std::abs(ip) < 1e-12 * 12.0);
        }
    }
}

TEST_CASE("global-phase property of steering") {
    const double psi = 0.7342;
    for (int m : {-5, -2, 0, 3, 6}) {
        const ExcitationVector a = mode_weights(12, m, psi);
        const ExcitationVector b = mode_weights(12, m, 0.0);
        const cplx phase = std::polar(1.0, static_cast<double>(m) * psi);
        for (std::size_t i = 0; i < 12; ++i) {
            CHECK(std::abs(a[i] - phase * b[i]) < 1e-14);
            CHECK(std::abs(std::abs(a[i]) - std::abs(b[i])) < 1e-15);
        }
    }
}

TEST_CASE("oam_weights examples and aliasing") {
    const ExcitationVector w0 = oam_weights(12, 0);
    for (const cplx& w : w0)
        CHECK(std::abs(w - cplx(1.0, 0.0)) < 1e-15);

    const ExcitationVector w6 = oam_weights(12, 6);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(std::abs(w6[i] - cplx(i % 2 == 0 ? 1.0 : -1.0, 0.0)) < 1e-13);

    const ExcitationVector w1 = oam_weights(12, 1);
    CHECK(std::abs(w1[1] - std::polar(1.0, kPi / 6.0)) < 1e-15);

    // Aliasing: l and l + N give the same weights to rounding.
    for (int l : {-5, -1, 0, 2, 6}) {
        const ExcitationVector a = oam_weights(12, l);
        const ExcitationVector b = oam_weights(12, l + 12);
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
}

TEST_CASE("oam_weights agree with mode_weights where both are defined") {
    for (int l = -5; l <= 6; ++l) {
        const ExcitationVector a = oam_weights(12, l);
        const ExcitationVector b = mode_weights(12, l, 0.0);
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(std::abs(a[i] - b[i]) < 1e-13);
    }
}

TEST_CASE("sum of oam weights vanishes except for l = 0 mod N") {
    for (int l = -12; l <= 13; ++l) {
        cplx sum{0.0, 0.0};
        for (const cplx& w : oam_weights(12, l))
            sum += w;
        if (l % 12 == 0)
            CHECK(std::abs(sum - cplx(12.0, 0.0)) < 1e-12 * 12.0);
        else
            CHECK(std::abs(sum) < 1e-12 * 12.0);
    }
}

TEST_CASE("mix_modes matches closed-form element values") {
    ModeMixSpec broadcast;
    broadcast.modes = {0};
    broadcast.normalization = Normalization::none;
    for (const cplx& w : mix_modes(12, broadcast))
        CHECK(std::abs(w - cplx(1.0, 0.0)) < 1e-15);

    ModeMixSpec ua;
    ua.modes = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
    ua.normalization = Normalization::none;
    CHECK(std::abs(mix_modes(12, ua)[0] - cplx(11.0, 0.0)) < 1e-12);

    ModeMixSpec ma;
    ma.modes = {1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
    ma.normalization = Normalization::none;
    const ExcitationVector w = mix_modes(12, ma);
    CHECK(std::abs(w[0] - cplx(10.0, 0.0)) < 1e-12);
    CHECK(std::abs(w[6] - cplx(-2.0, 0.0)) < 1e-12);

    // Brute-force oracle: direct double sum.
    for (std::size_t i = 0; i < 12; ++i) {
        cplx expect{0.0, 0.0};
        for (int m : ma.modes)
            expect += std::polar(1.0, m * element_azimuths(12)[i]);
        CHECK(std::abs(w[i] - expect) < 1e-12);
    }
}

TEST_CASE("mix_modes rejects an empty set; single mode reduces to mode_weights") {
    ModeMixSpec empty;
    CHECK_THROWS_AS(mix_modes(12, empty), invalid_argument);

    ModeMixSpec single;
    single.modes = {3};
    single.steering = 0.21;
    single.normalization = Normalization::none;
    const ExcitationVector a = mix_modes(12, single);
    const ExcitationVector b = mode_weights(12, 3, 0.21);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("cast presets carry the exact mode sets") {
    CHECK(cast_preset(CastPreset::broadcast).modes == std::set<int>{0});
    CHECK(cast_preset(std::string("unicast-A")).modes ==
          std::set<int>{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5});
    CHECK(cast_preset(std::string("unicast-B")).modes == std::set<int>{-3, -2, -1, 0, 1, 2, 3});
    CHECK(cast_preset(std::string("multicast-A")).modes ==
          std::set<int>{-5, -4, -3, -2, -1, 1, 2, 3, 4, 5});
    CHECK(cast_preset(std::string("multicast-B")).modes == std::set<int>{-5, -4, -3, 3, 4, 5});
    CHECK(cast_preset(std::string("multicast-C")).modes == std::set<int>{-5, -4, 4, 5});
    for (CastPreset p : all_cast_presets()) {
        const ModeMixSpec spec = cast_preset(p);
        CHECK(spec.steering == 0.0);
        CHECK(spec.normalization == Normalization::unit_total_power);
    }
    CHECK_THROWS_AS(parse_cast_preset("unicast-C"), invalid_argument);
}

TEST_CASE("normalization modes") {
    ModeMixSpec spec;
    spec.modes = {0, 1, -1};

    spec.normalization = Normalization::unit_total_power;
    double p = 0.0;
    for (const cplx& w : mix_modes(12, spec))
        p += std::norm(w);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-14));

    spec.normalization = Normalization::unit_peak;
    double peak = 0.0;
    for (const cplx& w : mix_modes(12, spec))
        peak = std::max(peak, std::abs(w));
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("excitation JSON round trip") {
    const ExcitationVector w = mode_weights(12, 2, 0.4);
    const ExcitationVector back = excitation_from_json(excitation_to_json(w));
    REQUIRE(back.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(std::abs(w[i] - back[i]) < 1e-15);

    CHECK_THROWS_AS(excitation_from_json("not json"), format_error);
    CHECK_THROWS_AS(excitation_from_json("[]"), format_error);
    CHECK_THROWS_AS(excitation_from_json("[[1.0]]"), format_error);
}
