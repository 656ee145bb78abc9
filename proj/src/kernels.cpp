#include "asit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace asit::kernels {

namespace {

// Reduction block size. Block partials are accumulated serially in index
// order, which pins the floating-point result independent of thread count.
constexpr std::ptrdiff_t kBlock = 4096;

void check_same_size(std::size_t a, std::size_t b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": size mismatch");
}

inline std::size_t vox(int i, int j, int k, int nx, int ny) {
    return (static_cast<std::size_t>(k) * ny + j) * nx + i;
}

struct TvDiffs {
    double dx, dy, dz;
};

inline TvDiffs tv_diffs(const double* v, int i, int j, int k, int nx, int ny, int nz) {
    const std::size_t p = vox(i, j, k, nx, ny);
    TvDiffs d{0.0, 0.0, 0.0};
    if (i < nx - 1) d.dx = v[p + 1] - v[p];
    if (j < ny - 1) d.dy = v[p + nx] - v[p];
    if (k < nz - 1) d.dz = v[p + static_cast<std::size_t>(nx) * ny] - v[p];
    return d;
}

inline double tv_inv_mag(const double* v, int i, int j, int k, int nx, int ny, int nz,
                         double eps) {
    const TvDiffs d = tv_diffs(v, i, j, k, nx, ny, nz);
    const double s = d.dx * d.dx + d.dy * d.dy + d.dz * d.dz + eps;
    return s > 0.0 ? 1.0 / std::sqrt(s) : 0.0;
}

inline void tv_grad_at(const double* v, double* g, int i, int j, int k, int nx, int ny,
                       int nz, double eps) {
    const TvDiffs d = tv_diffs(v, i, j, k, nx, ny, nz);
    double acc = -(d.dx + d.dy + d.dz) * tv_inv_mag(v, i, j, k, nx, ny, nz, eps);
    if (i > 0) {
        const TvDiffs dl = tv_diffs(v, i - 1, j, k, nx, ny, nz);
        acc += dl.dx * tv_inv_mag(v, i - 1, j, k, nx, ny, nz, eps);
    }
    if (j > 0) {
        const TvDiffs dl = tv_diffs(v, i, j - 1, k, nx, ny, nz);
        acc += dl.dy * tv_inv_mag(v, i, j - 1, k, nx, ny, nz, eps);
    }
    if (k > 0) {
        const TvDiffs dl = tv_diffs(v, i, j, k - 1, nx, ny, nz);
        acc += dl.dz * tv_inv_mag(v, i, j, k - 1, nx, ny, nz, eps);
    }
    g[vox(i, j, k, nx, ny)] = acc;
}

inline double tv_cell_cost(const double* v, int i, int j, int k, int nx, int ny, int nz,
                           double eps) {
    const TvDiffs d = tv_diffs(v, i, j, k, nx, ny, nz);
    return std::sqrt(d.dx * d.dx + d.dy * d.dy + d.dz * d.dz + eps);
}

}  // namespace

void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(out.size(), a.size(), "multiply");
    check_same_size(a.size(), b.size(), "multiply");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void multiply_inplace(std::span<cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "multiply_inplace");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= b[i];
}

void multiply_conj_inplace(std::span<cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "multiply_conj_inplace");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= std::conj(b[i]);
}

void exp_i(std::span<cplx> out, std::span<const double> phase) {
    check_same_size(out.size(), phase.size(), "exp_i");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(phase.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = cplx(std::cos(phase[i]), std::sin(phase[i]));
}

void scale(std::span<cplx> a, cplx s) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) a[i] *= s;
}

void axpy(std::span<double> y, double a, std::span<const double> x) {
    check_same_size(y.size(), x.size(), "axpy");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum_abs2(std::span<const cplx> v) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::ptrdiff_t end = std::min(n, (b + 1) * kBlock);
        double s = 0.0;
        for (std::ptrdiff_t i = b * kBlock; i < end; ++i)
            s += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
        partial[b] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double sum_abs2(std::span<const double> v) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::ptrdiff_t end = std::min(n, (b + 1) * kBlock);
        double s = 0.0;
        for (std::ptrdiff_t i = b * kBlock; i < end; ++i) s += v[i] * v[i];
        partial[b] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "dot");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<cplx> partial(static_cast<std::size_t>(nblocks), cplx(0.0, 0.0));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < nblocks; ++blk) {
        const std::ptrdiff_t end = std::min(n, (blk + 1) * kBlock);
        cplx s(0.0, 0.0);
        for (std::ptrdiff_t i = blk * kBlock; i < end; ++i) s += a[i] * std::conj(b[i]);
        partial[blk] = s;
    }
    cplx total(0.0, 0.0);
    for (const cplx& p : partial) total += p;
    return total;
}

double max_abs(std::span<const double> v) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

double tv_cost(const double* v, int nx, int ny, int nz, double eps) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(nx) * ny * nz;
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::ptrdiff_t end = std::min(n, (b + 1) * kBlock);
        double s = 0.0;
        for (std::ptrdiff_t p = b * kBlock; p < end; ++p) {
            const int i = static_cast<int>(p % nx);
            const int j = static_cast<int>((p / nx) % ny);
            const int k = static_cast<int>(p / (static_cast<std::ptrdiff_t>(nx) * ny));
            s += tv_cell_cost(v, i, j, k, nx, ny, nz, eps);
        }
        partial[b] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

void tv_grad(const double* v, int nx, int ny, int nz, double eps, double* g) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(nx) * ny * nz;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        const int i = static_cast<int>(p % nx);
        const int j = static_cast<int>((p / nx) % ny);
        const int k = static_cast<int>(p / (static_cast<std::ptrdiff_t>(nx) * ny));
        tv_grad_at(v, g, i, j, k, nx, ny, nz, eps);
    }
}

namespace serial {

void multiply(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(out.size(), a.size(), "multiply");
    check_same_size(a.size(), b.size(), "multiply");
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void multiply_inplace(std::span<cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "multiply_inplace");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

void multiply_conj_inplace(std::span<cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "multiply_conj_inplace");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= std::conj(b[i]);
}

void exp_i(std::span<cplx> out, std::span<const double> phase) {
    check_same_size(out.size(), phase.size(), "exp_i");
    for (std::size_t i = 0; i < phase.size(); ++i)
        out[i] = cplx(std::cos(phase[i]), std::sin(phase[i]));
}

void scale(std::span<cplx> a, cplx s) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= s;
}

void axpy(std::span<double> y, double a, std::span<const double> x) {
    check_same_size(y.size(), x.size(), "axpy");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double sum_abs2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += z.real() * z.real() + z.imag() * z.imag();
    return s;
}

double sum_abs2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(a.size(), b.size(), "dot");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double tv_cost(const double* v, int nx, int ny, int nz, double eps) {
    double s = 0.0;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) s += tv_cell_cost(v, i, j, k, nx, ny, nz, eps);
    return s;
}

void tv_grad(const double* v, int nx, int ny, int nz, double eps, double* g) {
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) tv_grad_at(v, g, i, j, k, nx, ny, nz, eps);
}

}  // namespace serial

}  // namespace asit::kernels
