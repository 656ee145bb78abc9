#include "asit/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace asit {

double Grid2D::freq_x(int i) const {
    const int w = (i <= nx / 2) ? i : i - nx;
    return static_cast<double>(w) / (nx * dx);
}

double Grid2D::freq_y(int j) const {
    const int w = (j <= ny / 2) ? j : j - ny;
    return static_cast<double>(w) / (ny * dy);
}

void Grid2D::validate() const {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("Grid2D: nx and ny must be >= 2, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    if (!(dx > 0.0) || !(dy > 0.0))
        throw std::invalid_argument("Grid2D: pixel pitch must be positive");
}

Grid2D make_square_grid(int n, double pitch) {
    Grid2D g{n, n, pitch, pitch};
    g.validate();
    return g;
}

std::vector<double> radial_frequency(const Grid2D& grid) {
    grid.validate();
    std::vector<double> fx(grid.nx), fy(grid.ny);
    for (int i = 0; i < grid.nx; ++i) fx[i] = grid.freq_x(i);
    for (int j = 0; j < grid.ny; ++j) fy[j] = grid.freq_y(j);

    std::vector<double> out(grid.size());
    for (int j = 0; j < grid.ny; ++j) {
        const double fy2 = fy[j] * fy[j];
        double* row = out.data() + static_cast<std::size_t>(j) * grid.nx;
        for (int i = 0; i < grid.nx; ++i) row[i] = std::sqrt(fx[i] * fx[i] + fy2);
    }
    return out;
}

}  // namespace asit
