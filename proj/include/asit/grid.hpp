#ifndef ASIT_GRID_HPP
#define ASIT_GRID_HPP

#include <cstddef>
#include <vector>

namespace asit {

/// Uniform 2D sampling grid with physical pixel pitch in meters.
///
/// Spatial-frequency samples follow standard DFT ordering:
/// f_x[i] = wrap(i) / (nx*dx) with wrap(i) = i for i <= nx/2 and i - nx
/// otherwise, so index nx/2 carries +Nyquist on even grids.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;  // [m]
    double dy = 0.0;  // [m]

    bool operator==(const Grid2D&) const = default;

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    double freq_x(int i) const;  // [cycles/m]
    double freq_y(int j) const;

    double nyquist_x() const { return 0.5 / dx; }
    double nyquist_y() const { return 0.5 / dy; }

    /// Fundamental frequency 1/(nx*dx), the radial bin width used for
    /// spectral analysis.
    double fundamental() const { return 1.0 / (nx * dx); }

    /// Throws std::invalid_argument unless nx,ny >= 2 and dx,dy > 0.
    void validate() const;
};

Grid2D make_square_grid(int n, double pitch);

/// |f| = sqrt(f_x^2 + f_y^2) for every sample, row-major (y outer, x inner).
std::vector<double> radial_frequency(const Grid2D& grid);

}  // namespace asit

#endif
