#include "asit/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asit/kernels.hpp"

namespace asit {

namespace {

constexpr int kGlyphSize = 24;

// Embedded stroke masks. Blocky letterforms; the experiments only need
// deterministic rasterization and lateral overlap between consecutive
// letters, not typographic fidelity.
const char* const kGlyphA[kGlyphSize] = {
    ".....##############.....",
    ".....##############.....",
    ".....##############.....",
    ".....##############.....",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...##################...",
    "...##################...",
    "...##################...",
    "...##################...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
};

const char* const kGlyphB[kGlyphSize] = {
    "...###############......",
    "...###############......",
    "...#################....",
    "...#################....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...#################....",
    "...###############......",
    "...###############......",
    "...##################...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...##################...",
    "...##################...",
    "...################.....",
    "...################.....",
};

const char* const kGlyphC[kGlyphSize] = {
    ".....################...",
    ".....################...",
    "...##################...",
    "...##################...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####.................",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...####..........####...",
    "...##################...",
    "...##################...",
    ".....################...",
    ".....################...",
};

const char* const kGlyphD[kGlyphSize] = {
    "...#############........",
    "...#############........",
    "...#############........",
    "...#################....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...####.........####....",
    "...#################....",
    "...#############........",
    "...#############........",
    "...#############........",
};

const char* const* glyph_rows(char letter) {
    switch (letter) {
        case 'A': return kGlyphA;
        case 'B': return kGlyphB;
        case 'C': return kGlyphC;
        case 'D': return kGlyphD;
        default:
            throw std::invalid_argument(std::string("phantom_letters: unsupported glyph '") +
                                        letter + "', expected one of A,B,C,D");
    }
}

}  // namespace

std::span<double> RIVolume::slice(int j) {
    if (j < 0 || j >= n_slices) throw std::out_of_range("RIVolume::slice: index out of range");
    return {values.data() + static_cast<std::size_t>(j) * grid.size(), grid.size()};
}

std::span<const double> RIVolume::slice(int j) const {
    if (j < 0 || j >= n_slices) throw std::out_of_range("RIVolume::slice: index out of range");
    return {values.data() + static_cast<std::size_t>(j) * grid.size(), grid.size()};
}

void RIVolume::validate() const {
    grid.validate();
    if (n_slices < 1) throw std::invalid_argument("RIVolume: need at least one slice");
    if (n_slices >= 2 && !(delta_z > 0.0))
        throw std::invalid_argument("RIVolume: delta_z must be positive for multi-slice volumes");
    if (delta_z < 0.0) throw std::invalid_argument("RIVolume: delta_z must be non-negative");
    if (detector_gap < 0.0)
        throw std::invalid_argument("RIVolume: detector_gap must be non-negative");
    if (values.size() != voxel_count())
        throw std::invalid_argument("RIVolume: voxel storage does not match geometry");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("RIVolume: non-finite voxel");
}

bool RIVolume::same_geometry(const RIVolume& other) const {
    return grid == other.grid && n_slices == other.n_slices && delta_z == other.delta_z &&
           detector_gap == other.detector_gap && n_medium == other.n_medium;
}

RIVolume make_uniform_volume(const Grid2D& grid, int n_slices, double delta_z,
                             double detector_gap, double n_medium) {
    RIVolume v;
    v.grid = grid;
    v.n_slices = n_slices;
    v.delta_z = delta_z;
    v.detector_gap = detector_gap;
    v.n_medium = n_medium;
    v.values.assign(grid.size() * static_cast<std::size_t>(n_slices), n_medium);
    v.validate();
    return v;
}

ComplexField2D transmission(const RIVolume& volume, int j, double wavelength) {
    volume.validate();
    if (j < 0 || j >= volume.n_slices)
        throw std::out_of_range("transmission: slice index out of range");
    if (!(wavelength > 0.0)) throw std::invalid_argument("transmission: wavelength must be > 0");

    // The last slice (and a 1-slice volume) lumps the same slab thickness.
    const double scale = 2.0 * std::numbers::pi / wavelength * volume.delta_z;
    const auto n_j = volume.slice(j);
    std::vector<double> phase(n_j.size());
    for (std::size_t p = 0; p < n_j.size(); ++p) phase[p] = scale * (n_j[p] - volume.n_medium);

    ComplexField2D t(volume.grid);
    kernels::exp_i(t.values(), phase);
    return t;
}

std::vector<unsigned char> glyph_mask(char letter, const Grid2D& grid) {
    grid.validate();
    if (grid.nx < 64 || grid.ny < 64)
        throw std::invalid_argument("glyph_mask: grid must be at least 64x64");
    const char* const* rows = glyph_rows(letter);

    const int extent = static_cast<int>(std::lround(0.6 * std::min(grid.nx, grid.ny)));
    const int x0 = (grid.nx - extent) / 2;
    const int y0 = (grid.ny - extent) / 2;

    std::vector<unsigned char> mask(grid.size(), 0);
    for (int v = 0; v < extent; ++v) {
        const int gr = v * kGlyphSize / extent;  // nearest-neighbor (floor) sampling
        for (int u = 0; u < extent; ++u) {
            const int gc = u * kGlyphSize / extent;
            if (rows[gr][gc] == '#')
                mask[static_cast<std::size_t>(y0 + v) * grid.nx + (x0 + u)] = 1;
        }
    }
    return mask;
}

RIVolume phantom_letters(const std::string& letters, const Grid2D& grid, double delta_z,
                         double detector_gap, double n_inside, double n_medium) {
    if (letters.empty() || letters.size() > 4)
        throw std::invalid_argument("phantom_letters: need 1 to 4 letters");
    RIVolume vol = make_uniform_volume(grid, static_cast<int>(letters.size()), delta_z,
                                       detector_gap, n_medium);
    for (int j = 0; j < vol.n_slices; ++j) {
        const auto mask = glyph_mask(letters[static_cast<std::size_t>(j)], grid);
        auto s = vol.slice(j);
        for (std::size_t p = 0; p < mask.size(); ++p)
            if (mask[p]) s[p] = n_inside;
    }
    return vol;
}

}  // namespace asit
