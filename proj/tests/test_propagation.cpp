#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "asit/fft.hpp"
#include "asit/kernels.hpp"
#include "asit/rng.hpp"
#include "helpers.hpp"

using namespace asit;

namespace {

PropagationContext ctx64() { return {650e-9, make_square_grid(64, 1e-6)}; }

}  // namespace

TEST_CASE("plane wave acquires the on-axis phase exp(ikz)") {
    const PropagationContext ctx{650e-9, make_square_grid(32, 1e-6)};
    const ComplexField2D u(ctx.grid, cplx(1.0, 0.0));
    const double z = 50e-6;
    const ComplexField2D v = propagate(u, z, ctx);
    const cplx expected = std::exp(cplx(0.0, ctx.wavenumber() * z));
    for (const cplx& x : v.values()) {
        CHECK(std::abs(x - expected) < 1e-12);
        CHECK(std::abs(std::abs(x) - 1.0) < 1e-12);
    }
}

TEST_CASE("zero distance is the identity on non-evanescent fields") {
    Rng rng(5);
    const PropagationContext ctx = ctx64();
    const ComplexField2D u = test::random_bandlimited(ctx.grid, rng, 0.9 / ctx.wavelength);
    const ComplexField2D v = propagate(u, 0.0, ctx);
    CHECK(test::max_abs_diff(u.values(), v.values()) < 1e-12);
    const ComplexField2D w = adjoint_propagate(u, 0.0, ctx);
    CHECK(test::max_abs_diff(u.values(), w.values()) < 1e-12);
}

TEST_CASE("propagation composes additively in distance") {
    Rng rng(19);
    const PropagationContext ctx = ctx64();
    ComplexField2D u = test::random_bandlimited(ctx.grid, rng, 0.3 / 650e-9);
    // direct evaluation of the composed and single-step operators
    const ComplexField2D two_step = propagate(propagate(u, 13e-6, ctx), 27e-6, ctx);
    const ComplexField2D one_step = propagate(u, 40e-6, ctx);
    CHECK(test::max_abs_diff(two_step.values(), one_step.values()) < 1e-10);
}

TEST_CASE("unitary on the propagating subspace") {
    Rng rng(21);
    const PropagationContext ctx = ctx64();
    const ComplexField2D u = test::random_bandlimited(ctx.grid, rng, 0.3 / 650e-9);
    const double e_in = kernels::sum_abs2(u.values());
    for (double z : {-40e-6, 7.5e-6, 33e-6}) {
        const double e_out = kernels::sum_abs2(propagate(u, z, ctx).values());
        CHECK(e_out == doctest::Approx(e_in).epsilon(1e-12));
    }
}

TEST_CASE("energy of propagating components is conserved for full-band input") {
    Rng rng(37);
    // pitch fine enough that the grid actually carries evanescent samples
    const PropagationContext ctx{650e-9, make_square_grid(64, 0.25e-6)};
    const ComplexField2D u = test::random_field(ctx.grid, rng);
    // reference: energy of the non-evanescent part only
    const ComplexField2D propagating = bandlimit(u, 1.0 / ctx.wavelength);
    const double e_prop = kernels::sum_abs2(propagating.values());
    CHECK(e_prop < 0.9 * kernels::sum_abs2(u.values()));  // evanescent content exists
    const double e_out = kernels::sum_abs2(propagate(u, 5e-6, ctx).values());
    CHECK(e_out == doctest::Approx(e_prop).epsilon(1e-12));
}

TEST_CASE("adjoint passes the inner-product test over 100 random trials") {
    Rng rng(101);
    const PropagationContext ctx{650e-9, make_square_grid(32, 1e-6)};
    const double z = 17e-6;
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexField2D x = test::random_field(ctx.grid, rng);
        const ComplexField2D y = test::random_field(ctx.grid, rng);
        const cplx lhs = kernels::dot(propagate(x, z, ctx).values(), y.values());
        const cplx rhs = kernels::dot(x.values(), adjoint_propagate(y, z, ctx).values());
        const double nx = std::sqrt(kernels::sum_abs2(x.values()));
        const double ny = std::sqrt(kernels::sum_abs2(y.values()));
        CHECK(std::abs(lhs - rhs) / (nx * ny) < 1e-12);
    }
}

TEST_CASE("adjoint inverts propagation on band-limited fields") {
    Rng rng(55);
    const PropagationContext ctx = ctx64();
    const ComplexField2D u = test::random_bandlimited(ctx.grid, rng, 0.3 / 650e-9);
    const ComplexField2D back = adjoint_propagate(propagate(u, 29e-6, ctx), 29e-6, ctx);
    CHECK(test::max_abs_diff(u.values(), back.values()) < 1e-10);
}

TEST_CASE("bandlimit is an idempotent projection") {
    Rng rng(61);
    const Grid2D g = make_square_grid(64, 1e-6);
    const double fc = 0.3 / 0.65e-6;
    const ComplexField2D u = test::random_field(g, rng);
    const ComplexField2D once = bandlimit(u, fc);
    const ComplexField2D twice = bandlimit(once, fc);
    CHECK(test::max_abs_diff(once.values(), twice.values()) == 0.0);

    // constant field passes through any positive cutoff
    const ComplexField2D c(g, cplx(0.3, -0.7));
    const ComplexField2D cb = bandlimit(c, 1e3);
    CHECK(test::max_abs_diff(c.values(), cb.values()) < 1e-13);
}

TEST_CASE("bandlimit removes all spectral energy outside the disk") {
    Rng rng(67);
    const Grid2D g = make_square_grid(64, 1e-6);
    const double fc = 0.3 / 0.65e-6;
    const ComplexSpectrum2D spec = fft2(bandlimit(test::random_field(g, rng), fc));
    const auto fr = radial_frequency(g);
    double outside = 0.0;
    for (std::size_t p = 0; p < spec.size(); ++p)
        if (fr[p] * fr[p] > fc * fc) outside += std::norm(spec.values()[p]);
    CHECK(outside == 0.0);
}

TEST_CASE("bandlimit is self-adjoint") {
    Rng rng(71);
    const Grid2D g = make_square_grid(32, 1e-6);
    const double fc = 2e5;
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexField2D x = test::random_field(g, rng);
        const ComplexField2D y = test::random_field(g, rng);
        const cplx lhs = kernels::dot(bandlimit(x, fc).values(), y.values());
        const cplx rhs = kernels::dot(x.values(), bandlimit(y, fc).values());
        const double nx = std::sqrt(kernels::sum_abs2(x.values()));
        const double ny = std::sqrt(kernels::sum_abs2(y.values()));
        CHECK(std::abs(lhs - rhs) / (nx * ny) < 1e-12);
    }
}

TEST_CASE("aliasing-safe distance") {
    const Grid2D g = make_square_grid(200, 1e-6);
    CHECK(aliasing_safe_distance(g, 650e-9) == doctest::Approx(200e-12 / 650e-9));
}
