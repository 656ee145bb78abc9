#ifndef ASIT_FFT_HPP
#define ASIT_FFT_HPP

#include "asit/field.hpp"

namespace asit {

// Project-wide DFT convention, used by every propagation and gradient
// formula in this codebase:
//
//   fft2  — plain unnormalized forward DFT,
//   ifft2 — inverse DFT scaled by 1/(nx*ny),
//
// so ifft2(fft2(u)) == u and Parseval reads
// sum |u|^2 = (1/(nx*ny)) * sum |U|^2.
//
// Plans are FFTW_ESTIMATE, so the transform algorithm (and therefore the
// exact floating-point output) is reproducible run to run. Non-power-of-two
// sizes are supported.

ComplexSpectrum2D fft2(const ComplexField2D& field);
ComplexField2D ifft2(const ComplexSpectrum2D& spectrum);

}  // namespace asit

#endif
