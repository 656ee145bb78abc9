#include "asit/propagation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "asit/fft.hpp"
#include "asit/kernels.hpp"

namespace asit {

double PropagationContext::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void PropagationContext::validate() const {
    grid.validate();
    if (!(wavelength > 0.0))
        throw std::invalid_argument("PropagationContext: wavelength must be positive");
}

double aliasing_safe_distance(const Grid2D& grid, double wavelength) {
    return grid.nx * grid.dx * grid.dx / wavelength;
}

namespace {

using Transfer = std::shared_ptr<const std::vector<cplx>>;

// exp(i*alpha*z) on the propagating disk, 0 elsewhere. Cached per
// (grid, wavelength, z); the solver reuses the same two distances for
// every iteration.
Transfer transfer_function(const PropagationContext& ctx, double z) {
    using Key = std::tuple<int, int, double, double, double, double>;
    static std::mutex mutex;
    static std::map<Key, Transfer> cache;

    const Key key{ctx.grid.nx, ctx.grid.ny, ctx.grid.dx, ctx.grid.dy, ctx.wavelength, z};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double k = ctx.wavenumber();
    const double k2 = k * k;
    const double two_pi = 2.0 * std::numbers::pi;
    auto h = std::make_shared<std::vector<cplx>>(ctx.grid.size());
    for (int j = 0; j < ctx.grid.ny; ++j) {
        const double fy = ctx.grid.freq_y(j);
        for (int i = 0; i < ctx.grid.nx; ++i) {
            const double fx = ctx.grid.freq_x(i);
            const double q2 = two_pi * two_pi * (fx * fx + fy * fy);
            cplx& out = (*h)[static_cast<std::size_t>(j) * ctx.grid.nx + i];
            if (q2 > k2) {
                out = cplx(0.0, 0.0);
            } else {
                const double alpha = std::sqrt(k2 - q2);
                out = cplx(std::cos(alpha * z), std::sin(alpha * z));
            }
        }
    }

    std::lock_guard<std::mutex> lock(mutex);
    if (cache.size() > 64) cache.clear();
    return cache.emplace(key, std::move(h)).first->second;
}

void warn_if_aliasing(const PropagationContext& ctx, double z) {
    static std::atomic<bool> warned{false};
    const double safe = aliasing_safe_distance(ctx.grid, ctx.wavelength);
    if (std::abs(z) > safe && !warned.exchange(true)) {
        std::fprintf(stderr,
                     "warning: propagation distance %.6g m exceeds the aliasing-safe "
                     "distance %.6g m for this grid; transfer-function aliasing likely\n",
                     z, safe);
    }
}

ComplexField2D apply_transfer(const ComplexField2D& field, const PropagationContext& ctx,
                              double z, bool conjugate) {
    ctx.validate();
    if (field.grid() != ctx.grid)
        throw std::invalid_argument("propagate: field grid does not match context grid");
    warn_if_aliasing(ctx, z);

    ComplexSpectrum2D spec = fft2(field);
    const Transfer h = transfer_function(ctx, z);
    if (conjugate)
        kernels::multiply_conj_inplace(spec.values(), *h);
    else
        kernels::multiply_inplace(spec.values(), *h);
    return ifft2(spec);
}

}  // namespace

ComplexField2D propagate(const ComplexField2D& field, double z, const PropagationContext& ctx) {
    return apply_transfer(field, ctx, z, false);
}

ComplexField2D adjoint_propagate(const ComplexField2D& field, double z,
                                 const PropagationContext& ctx) {
    return apply_transfer(field, ctx, z, true);
}

ComplexField2D bandlimit(const ComplexField2D& field, double f_cut) {
    if (!(f_cut > 0.0)) throw std::invalid_argument("bandlimit: f_cut must be positive");
    const Grid2D& g = field.grid();
    ComplexSpectrum2D spec = fft2(field);
    auto vals = spec.values();
    const double f2 = f_cut * f_cut;
    for (int j = 0; j < g.ny; ++j) {
        const double fy = g.freq_y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double fx = g.freq_x(i);
            if (fx * fx + fy * fy > f2)
                vals[static_cast<std::size_t>(j) * g.nx + i] = cplx(0.0, 0.0);
        }
    }
    return ifft2(spec);
}

}  // namespace asit
