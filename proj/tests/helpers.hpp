#ifndef ASIT_TESTS_HELPERS_HPP
#define ASIT_TESTS_HELPERS_HPP

#include <vector>

#include "asit/field.hpp"
#include "asit/propagation.hpp"
#include "asit/rng.hpp"
#include "asit/scene.hpp"

namespace asit::test {

inline ComplexField2D random_field(const Grid2D& grid, Rng& rng) {
    std::vector<cplx> v(grid.size());
    for (cplx& z : v) z = cplx(rng.gaussian(), rng.gaussian());
    return {grid, std::move(v)};
}

inline ComplexField2D random_bandlimited(const Grid2D& grid, Rng& rng, double f_cut) {
    return bandlimit(random_field(grid, rng), f_cut);
}

/// Volume of n_medium + small random contrast, for gradient checks.
inline RIVolume random_volume(const Grid2D& grid, int n_slices, double delta_z,
                              double detector_gap, double n_medium, Rng& rng,
                              double contrast = 0.01) {
    RIVolume vol = make_uniform_volume(grid, n_slices, delta_z, detector_gap, n_medium);
    for (double& v : vol.values) v += contrast * rng.gaussian();
    return vol;
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace asit::test

#endif
