#include "asit/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace asit {

ComplexField2D::ComplexField2D(const Grid2D& grid, cplx fill) : grid_(grid) {
    grid_.validate();
    values_.assign(grid_.size(), fill);
}

ComplexField2D::ComplexField2D(const Grid2D& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size())
        throw std::invalid_argument("ComplexField2D: value count " +
                                    std::to_string(values_.size()) + " does not match grid " +
                                    std::to_string(grid_.size()));
}

bool ComplexField2D::all_finite() const {
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

void ComplexField2D::require_finite(const char* where) const {
    if (!all_finite())
        throw std::invalid_argument(std::string(where) + ": field contains non-finite values");
}

}  // namespace asit
