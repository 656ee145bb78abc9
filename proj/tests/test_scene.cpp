#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "asit/scene.hpp"

using namespace asit;

TEST_CASE("transmission of a contrast-free slice is unity") {
    const Grid2D g = make_square_grid(64, 1e-6);
    const RIVolume vol = make_uniform_volume(g, 2, 30e-6, 100e-6, 1.518);
    const ComplexField2D t = transmission(vol, 0, 650e-9);
    for (const cplx& v : t.values()) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("transmission phase follows (2*pi/lambda)*(n - n_m)*dz") {
    const Grid2D g = make_square_grid(64, 1e-6);
    RIVolume vol = make_uniform_volume(g, 1, 30e-6, 0.0, 1.518);
    for (double& v : vol.values) v = 1.548;
    const ComplexField2D t = transmission(vol, 0, 650e-9);

    const double phi = 2.0 * std::numbers::pi * 0.03 * 30e-6 / 650e-9;
    CHECK(phi == doctest::Approx(8.7021).epsilon(1e-4));
    const double wrapped = std::remainder(phi, 2.0 * std::numbers::pi);
    CHECK(std::abs(wrapped - 2.4189) < 1e-3);
    for (const cplx& v : t.values()) {
        CHECK(std::arg(v) == doctest::Approx(wrapped).epsilon(1e-10));
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
    }
}

TEST_CASE("transmission phase is linear in the refractive index") {
    const Grid2D g = make_square_grid(64, 1e-6);
    const double delta = 1e-3;  // small enough that 2*delta stays unwrapped
    RIVolume a = make_uniform_volume(g, 1, 30e-6, 0.0, 1.518);
    RIVolume b = a;
    for (double& v : a.values) v += delta;
    for (double& v : b.values) v += 2.0 * delta;
    const double pa = std::arg(transmission(a, 0, 650e-9).values()[0]);
    const double pb = std::arg(transmission(b, 0, 650e-9).values()[0]);
    CHECK(pb == doctest::Approx(2.0 * pa).epsilon(1e-12));
}

TEST_CASE("transmission always has unit modulus") {
    const Grid2D g = make_square_grid(64, 1e-6);
    const RIVolume vol = phantom_letters("AB", g, 150e-6);
    for (int j = 0; j < 2; ++j) {
        const ComplexField2D t = transmission(vol, j, 650e-9);
        for (const cplx& v : t.values()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(transmission(vol, 2, 650e-9), std::out_of_range);
}

TEST_CASE("single-letter phantom takes exactly the two stated RI values") {
    const Grid2D g = make_square_grid(128, 1e-6);
    const RIVolume vol = phantom_letters("A", g, 30e-6);
    CHECK(vol.n_slices == 1);
    bool saw_inside = false;
    for (double v : vol.values) {
        CHECK((v == 1.518 || v == 1.548));
        if (v == 1.548) saw_inside = true;
    }
    CHECK(saw_inside);
}

TEST_CASE("consecutive letters laterally overlap") {
    const Grid2D g = make_square_grid(200, 1e-6);
    const char* letters = "ABCD";
    for (int j = 0; j + 1 < 4; ++j) {
        const auto a = glyph_mask(letters[j], g);
        const auto b = glyph_mask(letters[j + 1], g);
        std::size_t overlap = 0;
        for (std::size_t p = 0; p < a.size(); ++p)
            if (a[p] && b[p]) ++overlap;
        CHECK(overlap > 0);
    }
}

TEST_CASE("phantom rasterization is deterministic") {
    const Grid2D g = make_square_grid(200, 1e-6);
    const RIVolume a = phantom_letters("AB", g, 150e-6);
    const RIVolume b = phantom_letters("AB", g, 150e-6);
    CHECK(a.values == b.values);
}

TEST_CASE("phantom input validation") {
    const Grid2D g = make_square_grid(200, 1e-6);
    CHECK_THROWS(phantom_letters("", g, 150e-6));
    CHECK_THROWS(phantom_letters("ABCDA", g, 150e-6));
    CHECK_THROWS(phantom_letters("X", g, 150e-6));
    CHECK_THROWS(phantom_letters("A", make_square_grid(32, 1e-6), 30e-6));
}
