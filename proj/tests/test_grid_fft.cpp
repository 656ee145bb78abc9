#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "asit/fft.hpp"
#include "asit/kernels.hpp"
#include "asit/rng.hpp"
#include "helpers.hpp"

using namespace asit;

TEST_CASE("grid validation") {
    CHECK_THROWS(Grid2D{1, 4, 1e-6, 1e-6}.validate());
    CHECK_THROWS(Grid2D{4, 4, 0.0, 1e-6}.validate());
    CHECK_NOTHROW(Grid2D{2, 2, 1e-6, 1e-6}.validate());
}

TEST_CASE("frequency samples follow DFT ordering") {
    const Grid2D g = make_square_grid(200, 1e-6);
    CHECK(g.freq_x(0) == 0.0);
    CHECK(g.freq_x(1) == doctest::Approx(5e3).epsilon(1e-12));
    CHECK(g.freq_x(100) == doctest::Approx(5e5).epsilon(1e-12));  // +Nyquist
    CHECK(g.freq_x(199) == doctest::Approx(-5e3).epsilon(1e-12));

    const auto fr = radial_frequency(g);
    CHECK(fr[0] == 0.0);
    CHECK(fr[1] == doctest::Approx(5e3).epsilon(1e-12));
    CHECK(fr[100] == doctest::Approx(5e5).epsilon(1e-12));
}

TEST_CASE("radial frequency is symmetric under index reflection") {
    const Grid2D g = make_square_grid(64, 0.8e-6);
    for (int i = 1; i < g.nx; ++i)
        CHECK(std::abs(g.freq_x(i)) == doctest::Approx(std::abs(g.freq_x(g.nx - i))));
}

TEST_CASE("DFT of a constant concentrates at DC") {
    const Grid2D g = make_square_grid(4, 1e-6);
    const ComplexField2D u(g, cplx(1.0, 0.0));
    const ComplexSpectrum2D s = fft2(u);
    CHECK(std::abs(s.values()[0] - cplx(16.0, 0.0)) < 1e-13);
    for (std::size_t p = 1; p < s.size(); ++p) CHECK(std::abs(s.values()[p]) < 1e-13);
}

TEST_CASE("fft round trip is the identity") {
    Rng rng(42);
    const Grid2D g = make_square_grid(64, 1e-6);
    const ComplexField2D u = test::random_field(g, rng);
    const ComplexField2D v = ifft2(fft2(u));
    CHECK(test::max_abs_diff(u.values(), v.values()) < 1e-12);
}

TEST_CASE("Parseval under the declared normalization") {
    Rng rng(7);
    const Grid2D g = make_square_grid(32, 1e-6);
    const ComplexField2D u = test::random_field(g, rng);
    const double space = kernels::sum_abs2(u.values());
    const double freq = kernels::sum_abs2(fft2(u).values()) / g.size();
    CHECK(space == doctest::Approx(freq).epsilon(1e-12));
}

TEST_CASE("non-finite input is rejected with a diagnostic") {
    const Grid2D g = make_square_grid(8, 1e-6);
    ComplexField2D u(g, cplx(1.0, 0.0));
    u.at(3, 3) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(fft2(u), std::invalid_argument);
}

TEST_CASE("fft supports non-power-of-two sizes") {
    Rng rng(3);
    const Grid2D g = make_square_grid(200, 1e-6);
    const ComplexField2D u = test::random_field(g, rng);
    const ComplexField2D v = ifft2(fft2(u));
    CHECK(test::max_abs_diff(u.values(), v.values()) < 1e-12);
}
