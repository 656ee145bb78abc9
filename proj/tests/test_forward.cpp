#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asit/forward.hpp"
#include "asit/kernels.hpp"
#include "asit/rng.hpp"
#include "helpers.hpp"

using namespace asit;

namespace {

DetectorModel noiseless(double na = 0.3) {
    DetectorModel det;
    det.na = na;
    det.photons_per_pixel.reset();
    return det;
}

}  // namespace

TEST_CASE("contrast-free volume leaves a plane wave at unit magnitude") {
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    const RIVolume vol = make_uniform_volume(ctx.grid, 2, 20e-6, 30e-6, 1.518);
    const ComplexField2D out = msbp_forward(vol, plane_wave(ctx.grid), ctx, noiseless());
    const cplx expected = std::exp(cplx(0.0, ctx.wavenumber() * vol.plane_p_z()));
    for (const cplx& v : out.values()) {
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
        CHECK(std::abs(v - expected) < 1e-11);
    }
}

TEST_CASE("degenerate geometry reduces to a single transmission") {
    // one slice, no gap, uniform slab: output is illumination times t0
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    RIVolume vol = make_uniform_volume(ctx.grid, 1, 25e-6, 0.0, 1.518);
    for (double& v : vol.values) v = 1.530;
    const ComplexField2D illum = plane_wave(ctx.grid);
    const ComplexField2D out = msbp_forward(vol, illum, ctx, noiseless());
    const ComplexField2D t0 = transmission(vol, 0, ctx.wavelength);
    ComplexField2D expected = illum;
    kernels::multiply_inplace(expected.values(), t0.values());
    CHECK(test::max_abs_diff(out.values(), expected.values()) < 1e-13);
}

TEST_CASE("volumes differing only in the last slice differ only via its transmission") {
    Rng rng(41);
    const PropagationContext ctx{650e-9, make_square_grid(32, 1e-6)};
    const DetectorModel det = noiseless();
    RIVolume v1 = test::random_volume(ctx.grid, 2, 10e-6, 15e-6, 1.518, rng);
    RIVolume v2 = v1;
    {
        auto s = v2.slice(1);
        Rng pert(77);
        for (double& x : s) x += 0.005 * pert.gaussian();
    }
    const ComplexField2D illum = test::random_bandlimited(ctx.grid, rng, 0.3 / 650e-9);

    const ForwardTrace t1 = msbp_forward_trace(v1, illum, ctx, det);
    const ForwardTrace t2 = msbp_forward_trace(v2, illum, ctx, det);

    // identical prefix: the field entering the last slice is unchanged
    CHECK(test::max_abs_diff(t1.entering[1].values(), t2.entering[1].values()) == 0.0);

    // direct recomputation of the v2 output from the shared prefix
    ComplexField2D exit = t1.entering[1];
    kernels::multiply_inplace(exit.values(), transmission(v2, 1, ctx.wavelength).values());
    const ComplexField2D expected =
        bandlimit(propagate(exit, v2.detector_gap, ctx), det.f_na(ctx.wavelength));
    CHECK(test::max_abs_diff(t2.output.values(), expected.values()) == 0.0);
}

TEST_CASE("noiseless detection is the identity") {
    Rng rng(43);
    const Grid2D g = make_square_grid(32, 1e-6);
    const ComplexField2D u = test::random_field(g, rng);
    const ComplexField2D v = detect(u, noiseless());
    CHECK(test::max_abs_diff(u.values(), v.values()) == 0.0);
}

TEST_CASE("noise standard deviation matches 1/sqrt(2 N0)") {
    const Grid2D g = make_square_grid(200, 1e-6);
    const ComplexField2D u(g, cplx(0.0, 0.0));
    DetectorModel det;
    det.na = 0.3;
    det.photons_per_pixel = 5e4;
    det.noise_seed = 7;

    const double sigma = det.noise_std();
    CHECK(sigma == doctest::Approx(3.1623e-3).epsilon(1e-4));

    const ComplexField2D noisy = detect(u, det);
    double sum2 = 0.0;
    for (const cplx& v : noisy.values()) sum2 += v.real() * v.real() + v.imag() * v.imag();
    const double sample_std = std::sqrt(sum2 / (2.0 * g.size()));
    CHECK(sample_std == doctest::Approx(sigma).epsilon(0.02));
}

TEST_CASE("detection noise is bit-reproducible per seed and stream") {
    Rng rng(47);
    const Grid2D g = make_square_grid(32, 1e-6);
    const ComplexField2D u = test::random_field(g, rng);
    DetectorModel det;
    det.na = 0.3;
    det.photons_per_pixel = 5e4;
    det.noise_seed = 123;

    const ComplexField2D a = detect(u, det, 0);
    const ComplexField2D b = detect(u, det, 0);
    CHECK(test::max_abs_diff(a.values(), b.values()) == 0.0);

    const ComplexField2D c = detect(u, det, 1);  // different illumination stream
    CHECK(test::max_abs_diff(a.values(), c.values()) > 0.0);
}

TEST_CASE("acquire composes forward and detect per illumination") {
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    const RIVolume vol = phantom_letters("AB", ctx.grid, 30e-6, 50e-6);
    DetectorModel det;
    det.na = 0.3;
    det.photons_per_pixel = 5e4;
    det.noise_seed = 11;

    IlluminationSet illums;
    illums.fields.push_back(plane_wave(ctx.grid));
    illums.meta.push_back({});

    const MeasurementSet single = acquire(vol, illums, ctx, det);
    REQUIRE(single.count() == 1);
    const ComplexField2D direct = detect(msbp_forward(vol, illums.fields[0], ctx, det), det, 0);
    CHECK(test::max_abs_diff(single.fields[0].values(), direct.values()) == 0.0);

    // identical illuminations with a noiseless detector give identical fields
    illums.fields.push_back(plane_wave(ctx.grid));
    illums.meta.push_back({});
    const MeasurementSet pair = acquire(vol, illums, ctx, noiseless());
    CHECK(test::max_abs_diff(pair.fields[0].values(), pair.fields[1].values()) == 0.0);
}

TEST_CASE("forward never gains energy") {
    Rng rng(53);
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    const RIVolume vol = phantom_letters("AB", ctx.grid, 30e-6, 50e-6);
    const ComplexField2D illum = test::random_field(ctx.grid, rng);
    const ComplexField2D out = msbp_forward(vol, illum, ctx, noiseless());
    CHECK(std::sqrt(kernels::sum_abs2(out.values())) <=
          std::sqrt(kernels::sum_abs2(illum.values())) + 1e-12);
}

TEST_CASE("without an object the plane-wave intensity is independent of delta_z") {
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    const DetectorModel det = noiseless();
    const ComplexField2D illum = plane_wave(ctx.grid);
    const RIVolume a = make_uniform_volume(ctx.grid, 2, 20e-6, 40e-6, 1.518);
    const RIVolume b = make_uniform_volume(ctx.grid, 2, 35e-6, 40e-6, 1.518);
    const ComplexField2D ua = msbp_forward(a, illum, ctx, det);
    const ComplexField2D ub = msbp_forward(b, illum, ctx, det);
    for (std::size_t p = 0; p < ua.size(); ++p)
        CHECK(std::abs(std::norm(ua.values()[p]) - std::norm(ub.values()[p])) < 1e-10);
}

TEST_CASE("detector rejects an NA beyond the grid Nyquist") {
    const PropagationContext ctx{650e-9, make_square_grid(64, 2e-6)};  // Nyquist 0.25/um
    const RIVolume vol = make_uniform_volume(ctx.grid, 1, 10e-6, 0.0, 1.518);
    DetectorModel det;
    det.na = 0.3;  // f_na = 0.4615/um > Nyquist
    CHECK_THROWS_AS(msbp_forward(vol, plane_wave(ctx.grid), ctx, det),
                    std::invalid_argument);
}

TEST_CASE("grid mismatch is rejected") {
    const PropagationContext ctx{650e-9, make_square_grid(64, 1e-6)};
    const RIVolume vol = make_uniform_volume(make_square_grid(32, 1e-6), 1, 10e-6, 0.0, 1.518);
    CHECK_THROWS_AS(msbp_forward(vol, plane_wave(make_square_grid(32, 1e-6)), ctx, noiseless()),
                    std::invalid_argument);
}
