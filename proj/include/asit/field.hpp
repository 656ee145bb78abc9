#ifndef ASIT_FIELD_HPP
#define ASIT_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "asit/grid.hpp"

namespace asit {

using cplx = std::complex<double>;

/// Sampled complex scalar field on a Grid2D. Row-major storage, y outer,
/// x inner. Value semantics; operations elsewhere treat fields as immutable
/// inputs and return fresh values.
class ComplexField2D {
public:
    ComplexField2D() = default;

    explicit ComplexField2D(const Grid2D& grid, cplx fill = cplx(0.0, 0.0));
    ComplexField2D(const Grid2D& grid, std::vector<cplx> values);

    const Grid2D& grid() const { return grid_; }

    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }

    cplx& at(int ix, int iy) { return values_[static_cast<std::size_t>(iy) * grid_.nx + ix]; }
    const cplx& at(int ix, int iy) const {
        return values_[static_cast<std::size_t>(iy) * grid_.nx + ix];
    }

    std::size_t size() const { return values_.size(); }

    bool all_finite() const;

    /// Throws std::invalid_argument if any entry is non-finite.
    void require_finite(const char* where) const;

private:
    Grid2D grid_;
    std::vector<cplx> values_;
};

/// Spectra share the sampled-field representation; the grid still describes
/// the spatial sampling the spectrum was taken over.
using ComplexSpectrum2D = ComplexField2D;

}  // namespace asit

#endif
