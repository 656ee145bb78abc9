#include "asit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "asit/kernels.hpp"

namespace asit {

namespace {

// One cached plan per (nx, ny, direction). Plans are created with
// FFTW_UNALIGNED so they can execute on any caller buffer via the
// new-array interface; fftw_execute_dft itself is thread-safe, the
// planner is not.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const Key key{nx, ny, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        // Row-major (y outer, x inner) maps to FFTW dims (n0=ny, n1=nx).
        // Planned out-of-place; every execution below is out-of-place too.
        std::vector<cplx> din(static_cast<std::size_t>(nx) * ny);
        std::vector<cplx> dout(din.size());
        fftw_plan plan = fftw_plan_dft_2d(
            ny, nx, reinterpret_cast<fftw_complex*>(din.data()),
            reinterpret_cast<fftw_complex*>(dout.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

ComplexField2D transform(const ComplexField2D& in, int sign, const char* where) {
    in.grid().validate();
    in.require_finite(where);
    fftw_plan plan = PlanCache::instance().get(in.grid().nx, in.grid().ny, sign);
    ComplexField2D out(in.grid());
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(
                         const_cast<cplx*>(in.values().data())),
                     reinterpret_cast<fftw_complex*>(out.values().data()));
    return out;
}

}  // namespace

ComplexSpectrum2D fft2(const ComplexField2D& field) {
    return transform(field, FFTW_FORWARD, "fft2");
}

ComplexField2D ifft2(const ComplexSpectrum2D& spectrum) {
    ComplexField2D out = transform(spectrum, FFTW_BACKWARD, "ifft2");
    kernels::scale(out.values(), cplx(1.0 / spectrum.grid().size(), 0.0));
    return out;
}

}  // namespace asit
