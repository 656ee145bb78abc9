#ifndef ASIT_PROPAGATION_HPP
#define ASIT_PROPAGATION_HPP

#include "asit/field.hpp"

namespace asit {

/// Wavelength + grid pair fixing the angular-spectrum transfer function.
/// Spectral components with 4*pi^2*(fx^2+fy^2) > k^2 (evanescent) are
/// zeroed by every propagation, which keeps the operator unitary on its
/// range and makes the adjoint the conjugate transfer function.
struct PropagationContext {
    double wavelength = 0.0;  // [m]
    Grid2D grid;

    double wavenumber() const;  // k = 2*pi/wavelength
    void validate() const;
};

/// Free-space propagation by z (may be negative):
/// F^-1[ F[u] * exp(i*alpha*z) ], alpha = sqrt(k^2 - 4*pi^2*|f|^2),
/// evanescent region zeroed. Warns on stderr (once per process) when |z|
/// exceeds the aliasing-safe distance nx*dx^2/wavelength.
ComplexField2D propagate(const ComplexField2D& field, double z,
                         const PropagationContext& ctx);

/// Adjoint of propagate under the standard complex inner product:
/// conjugate transfer function, same evanescent zeroing.
ComplexField2D adjoint_propagate(const ComplexField2D& field, double z,
                                 const PropagationContext& ctx);

/// Low-pass projection: spectrum entries with |f| > f_cut are zeroed; the
/// closed disk |f| <= f_cut passes. Idempotent and self-adjoint.
ComplexField2D bandlimit(const ComplexField2D& field, double f_cut);

/// nx*dx^2/wavelength, the distance beyond which the sampled angular
/// spectrum transfer function aliases.
double aliasing_safe_distance(const Grid2D& grid, double wavelength);

}  // namespace asit

#endif
