#ifndef ASIT_KERNELS_HPP
#define ASIT_KERNELS_HPP

#include <complex>
#include <span>

namespace asit::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops shared by the propagation, forward-model and
// solver code. Pointwise kernels are OpenMP parallel-for; reductions
// accumulate fixed-size blocks and then sum the block partials serially in
// index order, so every result is bit-identical for any thread count.
//
// asit::kernels::serial holds plain-loop reference implementations of the
// same contracts; the test suite checks the two against each other and the
// benchmark target compares their throughput.

void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
void multiply_inplace(std::span<cplx> a, std::span<const cplx> b);
/// a[i] *= conj(b[i])
void multiply_conj_inplace(std::span<cplx> a, std::span<const cplx> b);
/// out[i] = exp(i*phase[i])
void exp_i(std::span<cplx> out, std::span<const double> phase);
void scale(std::span<cplx> a, cplx s);

/// y[i] += a * x[i]
void axpy(std::span<double> y, double a, std::span<const double> x);

double sum_abs2(std::span<const cplx> v);
double sum_abs2(std::span<const double> v);
/// sum_i a[i] * conj(b[i])
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double max_abs(std::span<const double> v);

/// Total variation of an nz*ny*nx voxel grid (slice-major, row-major),
/// forward differences with the difference clamped to zero at the far edge.
/// eps = 0 gives the raw (unsmoothed) cost.
double tv_cost(const double* v, int nx, int ny, int nz, double eps);
/// Gradient of the eps-smoothed total variation, same layout as v.
void tv_grad(const double* v, int nx, int ny, int nz, double eps, double* g);

namespace serial {

void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
void multiply_inplace(std::span<cplx> a, std::span<const cplx> b);
void multiply_conj_inplace(std::span<cplx> a, std::span<const cplx> b);
void exp_i(std::span<cplx> out, std::span<const double> phase);
void scale(std::span<cplx> a, cplx s);
void axpy(std::span<double> y, double a, std::span<const double> x);
double sum_abs2(std::span<const cplx> v);
double sum_abs2(std::span<const double> v);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double max_abs(std::span<const double> v);
double tv_cost(const double* v, int nx, int ny, int nz, double eps);
void tv_grad(const double* v, int nx, int ny, int nz, double eps, double* g);

}  // namespace serial

}  // namespace asit::kernels

#endif
