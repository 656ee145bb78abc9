#include "asit/illumination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "asit/design.hpp"
#include "asit/fft.hpp"
#include "asit/kernels.hpp"
#include "asit/rng.hpp"

namespace asit {

void IlluminationSpec::validate() const {
    grid.validate();
    if (kind == IlluminationKind::speckle) {
        if (!(target_bwr >= 0.05 && target_bwr <= 1.0))
            throw std::invalid_argument(
                "IlluminationSpec: speckle target_bwr must lie in [0.05, 1.0]");
    }
}

ComplexField2D plane_wave(const Grid2D& grid) {
    grid.validate();
    return ComplexField2D(grid, cplx(1.0, 0.0));
}

namespace {

constexpr double kBwrTolerance = 0.05;
constexpr int kMaxBisectionSteps = 40;

// Speckle field for one candidate phase cutoff. The uniform phase draw is
// fixed by the seed; only the filter changes across tuning steps.
ComplexField2D speckle_for_cutoff(const std::vector<double>& raw_phase, const Grid2D& grid,
                                  double f_c) {
    // low-pass the real phase map with a disk of radius f_c
    ComplexField2D phase_field(grid);
    auto pv = phase_field.values();
    for (std::size_t p = 0; p < raw_phase.size(); ++p) pv[p] = cplx(raw_phase[p], 0.0);

    ComplexField2D filtered = bandlimit(phase_field, f_c);

    // back to a real map; imaginary residue of filtering a real map through
    // the symmetric disk is roundoff only
    std::vector<double> phase(raw_phase.size());
    auto fv = filtered.values();
    double lo = fv[0].real(), hi = fv[0].real();
    for (std::size_t p = 0; p < phase.size(); ++p) {
        phase[p] = fv[p].real();
        lo = std::min(lo, phase[p]);
        hi = std::max(hi, phase[p]);
    }

    // renormalize to [0, 2*pi] peak to peak
    const double span = hi - lo;
    const double scale = span > 0.0 ? 2.0 * std::numbers::pi / span : 0.0;
    for (double& v : phase) v = (v - lo) * scale;

    ComplexField2D out(grid);
    kernels::exp_i(out.values(), phase);
    return out;
}

}  // namespace

SpeckleField speckle_illumination(const IlluminationSpec& spec, const PropagationContext& ctx,
                                  double na) {
    spec.validate();
    ctx.validate();
    if (spec.kind != IlluminationKind::speckle)
        throw std::invalid_argument("speckle_illumination: spec.kind must be speckle");
    if (!(na > 0.0 && na < 1.0))
        throw std::invalid_argument("speckle_illumination: na must lie in (0,1)");
    if (spec.grid != ctx.grid)
        throw std::invalid_argument("speckle_illumination: spec grid does not match context");

    const double f_na = na / ctx.wavelength;

    Rng rng = Rng(spec.seed).derive(0x5350434Bu);  // speckle phase stream
    std::vector<double> raw_phase(spec.grid.size());
    for (double& p : raw_phase) p = rng.uniform_phase();

    auto measure = [&](double f_c) {
        ComplexField2D f = speckle_for_cutoff(raw_phase, spec.grid, f_c);
        const double bwr = effective_bandwidth(f, f_na).bwr;
        return std::pair<ComplexField2D, double>(std::move(f), bwr);
    };

    // BWR grows with the phase cutoff: bracket the target, then bisect.
    const double df = spec.grid.fundamental();
    double lo = df;
    double hi = std::min(spec.grid.nyquist_x(), spec.grid.nyquist_y());
    auto [lo_field, lo_bwr] = measure(lo);
    auto [hi_field, hi_bwr] = measure(hi);

    if (std::abs(lo_bwr - spec.target_bwr) <= kBwrTolerance)
        return {std::move(lo_field), lo_bwr, lo};
    if (std::abs(hi_bwr - spec.target_bwr) <= kBwrTolerance)
        return {std::move(hi_field), hi_bwr, hi};

    double best_bwr = std::abs(lo_bwr - spec.target_bwr) < std::abs(hi_bwr - spec.target_bwr)
                          ? lo_bwr
                          : hi_bwr;
    if (spec.target_bwr < lo_bwr || spec.target_bwr > hi_bwr)
        throw SpeckleTuningError(
            "speckle_illumination: target BWR is outside the achievable bracket [" +
                std::to_string(lo_bwr) + ", " + std::to_string(hi_bwr) + "]",
            best_bwr);

    for (int step = 0; step < kMaxBisectionSteps; ++step) {
        const double mid = 0.5 * (lo + hi);
        auto [field, bwr] = measure(mid);
        if (bwr < lo_bwr - 1e-12 || bwr > hi_bwr + 1e-12) {
            // measured BWR is only approximately monotone in the cutoff
            // (the renormalization step interferes); log and keep bisecting
            std::fprintf(stderr,
                         "warning: speckle tuning: BWR %.4f at cutoff %.6g left the bracket "
                         "[%.4f, %.4f]; continuing\n",
                         bwr, mid, lo_bwr, hi_bwr);
        }
        if (std::abs(bwr - spec.target_bwr) <= kBwrTolerance)
            return {std::move(field), bwr, mid};
        if (std::abs(bwr - spec.target_bwr) < std::abs(best_bwr - spec.target_bwr))
            best_bwr = bwr;
        if (bwr < spec.target_bwr) {
            lo = mid;
            lo_bwr = bwr;
        } else {
            hi = mid;
            hi_bwr = bwr;
        }
    }
    throw SpeckleTuningError("speckle_illumination: tuning failed after " +
                                 std::to_string(kMaxBisectionSteps) +
                                 " bisection steps; best achieved BWR " +
                                 std::to_string(best_bwr),
                             best_bwr);
}

}  // namespace asit
