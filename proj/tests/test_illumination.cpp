#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asit/design.hpp"
#include "asit/fft.hpp"
#include "asit/illumination.hpp"

using namespace asit;

TEST_CASE("plane wave is the constant unit field") {
    const Grid2D g = make_square_grid(64, 1e-6);
    const ComplexField2D u = plane_wave(g);
    for (const cplx& v : u.values()) CHECK(v == cplx(1.0, 0.0));

    const ComplexSpectrum2D s = fft2(u);
    CHECK(std::abs(s.values()[0]) == doctest::Approx(static_cast<double>(g.size())));
    for (std::size_t p = 1; p < s.size(); ++p) CHECK(std::abs(s.values()[p]) < 1e-10);
}

TEST_CASE("plane-wave BWR against NA 0.3 sits in the lowest radial bin") {
    const Grid2D g = make_square_grid(200, 1e-6);
    const double f_na = 0.3 / 650e-9;
    const EffectiveBandwidth eb = effective_bandwidth(plane_wave(g), f_na);
    CHECK(eb.f_bwr == doctest::Approx(g.fundamental()));
}

TEST_CASE("tuned speckle reaches the target BWR window") {
    const Grid2D g = make_square_grid(200, 1e-6);
    const PropagationContext ctx{650e-9, g};
    IlluminationSpec spec;
    spec.kind = IlluminationKind::speckle;
    spec.target_bwr = 0.6;
    spec.seed = 12345;
    spec.grid = g;

    const SpeckleField sf = speckle_illumination(spec, ctx, 0.3);
    CHECK(sf.achieved_bwr >= 0.55);
    CHECK(sf.achieved_bwr <= 0.65);

    const double measured = effective_bandwidth(sf.field, 0.3 / 650e-9).bwr;
    CHECK(measured == doctest::Approx(sf.achieved_bwr));
}

TEST_CASE("speckle output is unit modulus everywhere") {
    const Grid2D g = make_square_grid(128, 1e-6);
    const PropagationContext ctx{650e-9, g};
    IlluminationSpec spec;
    spec.kind = IlluminationKind::speckle;
    spec.target_bwr = 0.4;
    spec.seed = 99;
    spec.grid = g;
    const SpeckleField sf = speckle_illumination(spec, ctx, 0.3);
    for (const cplx& v : sf.field.values()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
}

TEST_CASE("same seed gives a bit-identical speckle field") {
    const Grid2D g = make_square_grid(128, 1e-6);
    const PropagationContext ctx{650e-9, g};
    IlluminationSpec spec;
    spec.kind = IlluminationKind::speckle;
    spec.target_bwr = 0.6;
    spec.seed = 2024;
    spec.grid = g;
    const SpeckleField a = speckle_illumination(spec, ctx, 0.3);
    const SpeckleField b = speckle_illumination(spec, ctx, 0.3);
    CHECK(a.achieved_bwr == b.achieved_bwr);
    const auto av = a.field.values();
    const auto bv = b.field.values();
    for (std::size_t p = 0; p < av.size(); ++p) CHECK(av[p] == bv[p]);
}

TEST_CASE("different seeds give different fields") {
    const Grid2D g = make_square_grid(128, 1e-6);
    const PropagationContext ctx{650e-9, g};
    IlluminationSpec spec;
    spec.kind = IlluminationKind::speckle;
    spec.target_bwr = 0.6;
    spec.grid = g;
    spec.seed = 1;
    const SpeckleField a = speckle_illumination(spec, ctx, 0.3);
    spec.seed = 2;
    const SpeckleField b = speckle_illumination(spec, ctx, 0.3);
    double diff = 0.0;
    for (std::size_t p = 0; p < a.field.size(); ++p)
        diff = std::max(diff, std::abs(a.field.values()[p] - b.field.values()[p]));
    CHECK(diff > 0.1);
}

TEST_CASE("spec validation") {
    IlluminationSpec spec;
    spec.kind = IlluminationKind::speckle;
    spec.grid = make_square_grid(64, 1e-6);
    spec.target_bwr = 0.01;  // below the supported range
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.target_bwr = 0.6;
    CHECK_NOTHROW(spec.validate());
}
