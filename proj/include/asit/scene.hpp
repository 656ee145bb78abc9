#ifndef ASIT_SCENE_HPP
#define ASIT_SCENE_HPP

#include <span>
#include <string>
#include <vector>

#include "asit/field.hpp"

namespace asit {

/// N axial slices of real refractive index. Slice 0 sits at z = 0, slice j
/// at j*delta_z, and the detection plane P at (N-1)*delta_z + detector_gap.
/// Voxels are stored slice-major, each slice row-major like ComplexField2D.
struct RIVolume {
    Grid2D grid;
    int n_slices = 0;
    double delta_z = 0.0;      // inter-slice distance [m]
    double detector_gap = 0.0; // last slice to plane P [m]
    double n_medium = 1.0;
    std::vector<double> values;

    std::span<double> slice(int j);
    std::span<const double> slice(int j) const;

    std::size_t voxel_count() const { return grid.size() * static_cast<std::size_t>(n_slices); }
    double slice_z(int j) const { return j * delta_z; }
    double plane_p_z() const { return (n_slices - 1) * delta_z + detector_gap; }

    void validate() const;
    bool same_geometry(const RIVolume& other) const;
};

RIVolume make_uniform_volume(const Grid2D& grid, int n_slices, double delta_z,
                             double detector_gap, double n_medium);

/// Lumped transmission function of slice j: exp(i*phi_j) with
/// phi_j(x,y) = (2*pi/wavelength) * (n_j(x,y) - n_medium) * delta_z.
/// The last slice uses the same slab thickness delta_z (and a 1-slice
/// volume uses delta_z as its declared thickness). Unit modulus everywhere.
ComplexField2D transmission(const RIVolume& volume, int j, double wavelength);

/// Letter-glyph phantom: one letter per slice from {A,B,C,D}, centered,
/// rasterized by nearest-neighbor from fixed embedded 24x24 stroke masks to
/// ~60% of the grid width, so consecutive letters laterally overlap.
/// Letter pixels take n_inside, background n_medium. No RNG.
RIVolume phantom_letters(const std::string& letters, const Grid2D& grid, double delta_z,
                         double detector_gap = 100e-6, double n_inside = 1.548,
                         double n_medium = 1.518);

/// The rasterized support mask of one glyph on a grid (1 inside the
/// letter), as used by phantom_letters. Exposed for cross-talk analysis.
std::vector<unsigned char> glyph_mask(char letter, const Grid2D& grid);

}  // namespace asit

#endif
