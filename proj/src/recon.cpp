#include "asit/recon.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "asit/kernels.hpp"
#include "asit/metrics.hpp"

namespace asit {

void SolverConfig::validate() const {
    if (outer_iterations < 1 || tv_subiterations < 1 || ls_max < 1)
        throw std::invalid_argument("SolverConfig: iteration counts must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("SolverConfig: beta must lie in (0,1)");
    if (!(beta_shrink > 0.0 && beta_shrink <= 1.0))
        throw std::invalid_argument("SolverConfig: beta_shrink must lie in (0,1]");
    if (!(tv_epsilon > 0.0)) throw std::invalid_argument("SolverConfig: tv_epsilon must be > 0");
    if (!(armijo_c > 0.0 && armijo_c < 1.0))
        throw std::invalid_argument("SolverConfig: armijo_c must lie in (0,1)");
    if (!(ls_shrink > 0.0 && ls_shrink < 1.0))
        throw std::invalid_argument("SolverConfig: ls_shrink must lie in (0,1)");
    if (!(first_step_voxel_change > 0.0))
        throw std::invalid_argument("SolverConfig: first_step_voxel_change must be > 0");
    if (!init_volume && n_slices < 1)
        throw std::invalid_argument("SolverConfig: n_slices required for medium initialization");
}

namespace {

void check_geometry(const RIVolume& estimate, const MeasurementSet& meas,
                    const IlluminationSet& illums, const PropagationContext& ctx) {
    if (meas.count() == 0) throw std::invalid_argument("solver: empty measurement set");
    if (meas.count() != illums.count())
        throw std::invalid_argument("solver: measurement/illumination count mismatch");
    if (estimate.grid != ctx.grid)
        throw std::invalid_argument("solver: estimate grid does not match context");
    if (estimate.delta_z != meas.delta_z)
        throw std::invalid_argument("solver: estimate delta_z does not match measurements");
    if (estimate.detector_gap != meas.detector_gap)
        throw std::invalid_argument("solver: estimate detector_gap does not match measurements");
    if (meas.wavelength != ctx.wavelength)
        throw std::invalid_argument("solver: measurement wavelength does not match context");
    for (const auto& f : meas.fields)
        if (f.grid() != ctx.grid)
            throw std::invalid_argument("solver: measurement grid mismatch");
    for (const auto& f : illums.fields)
        if (f.grid() != ctx.grid)
            throw std::invalid_argument("solver: illumination grid mismatch");
}

double cost_c1_single(const RIVolume& estimate, const ComplexField2D& measurement,
                      const ComplexField2D& illumination, const PropagationContext& ctx,
                      const DetectorModel& detector) {
    ComplexField2D y = msbp_forward(estimate, illumination, ctx, detector);
    auto yv = y.values();
    const auto dv = measurement.values();
    for (std::size_t p = 0; p < yv.size(); ++p) yv[p] -= dv[p];
    return kernels::sum_abs2(std::span<const cplx>(yv.data(), yv.size()));
}

void apply_clamp(RIVolume& vol) {
    for (double& v : vol.values) v = std::max(v, vol.n_medium);
}

}  // namespace

CostC1 cost_c1(const RIVolume& estimate, const MeasurementSet& measurements,
               const IlluminationSet& illuminations, const PropagationContext& ctx) {
    check_geometry(estimate, measurements, illuminations, ctx);
    CostC1 out;
    out.per_illumination.reserve(measurements.count());
    for (std::size_t l = 0; l < measurements.count(); ++l) {
        const double c = cost_c1_single(estimate, measurements.fields[l],
                                        illuminations.fields[l], ctx, measurements.detector);
        out.per_illumination.push_back(c);
        out.total += c;
    }
    return out;
}

std::vector<double> grad_c1_slicewise(const RIVolume& estimate,
                                      const ComplexField2D& measurement,
                                      const ComplexField2D& illumination,
                                      const PropagationContext& ctx,
                                      const DetectorModel& detector) {
    ForwardTrace trace = msbp_forward_trace(estimate, illumination, ctx, detector);

    // residual r = A(n) - u_meas, then w = P_gap^T B^T r
    ComplexField2D w = trace.output;
    {
        auto wv = w.values();
        const auto dv = measurement.values();
        for (std::size_t p = 0; p < wv.size(); ++p) wv[p] -= dv[p];
    }
    w = bandlimit(w, detector.f_na(ctx.wavelength));
    w = adjoint_propagate(w, estimate.detector_gap, ctx);

    const double phase_scale = 2.0 * std::numbers::pi / ctx.wavelength * estimate.delta_z;
    std::vector<double> grad(estimate.voxel_count());

    for (int j = estimate.n_slices - 1; j >= 0; --j) {
        const ComplexField2D t = transmission(estimate, j, ctx.wavelength);
        const auto uv = trace.entering[static_cast<std::size_t>(j)].values();
        const auto tv = t.values();
        const auto wv = w.values();
        double* gj = grad.data() + static_cast<std::size_t>(j) * estimate.grid.size();
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(estimate.grid.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t p = 0; p < n; ++p) {
            const cplx v = uv[p] * tv[p];  // exit wave of slice j
            // d/dn of |..|^2 through t = exp(i*phase_scale*(n - n_m))
            gj[p] = 2.0 * phase_scale *
                    (v.real() * wv[p].imag() - v.imag() * wv[p].real());
        }
        if (j > 0) {
            kernels::multiply_conj_inplace(w.values(), tv);
            w = adjoint_propagate(w, estimate.delta_z, ctx);
        }
    }
    return grad;
}

double cost_c2_tv(const RIVolume& estimate) {
    return kernels::tv_cost(estimate.values.data(), estimate.grid.nx, estimate.grid.ny,
                            estimate.n_slices, 0.0);
}

std::vector<double> grad_c2_tv(const RIVolume& estimate, double tv_epsilon) {
    if (!(tv_epsilon > 0.0)) throw std::invalid_argument("grad_c2_tv: tv_epsilon must be > 0");
    std::vector<double> grad(estimate.voxel_count());
    kernels::tv_grad(estimate.values.data(), estimate.grid.nx, estimate.grid.ny,
                     estimate.n_slices, tv_epsilon, grad.data());
    return grad;
}

double reduce_c1_step(SolverState& state, const MeasurementSet& measurements,
                      const IlluminationSet& illuminations, const PropagationContext& ctx,
                      const SolverConfig& config) {
    check_geometry(state.estimate, measurements, illuminations, ctx);
    if (state.last_step.size() != measurements.count())
        state.last_step.assign(measurements.count(), 0.0);

    const std::vector<double> before = state.estimate.values;

    for (std::size_t l = 0; l < measurements.count(); ++l) {
        const std::vector<double> g = grad_c1_slicewise(
            state.estimate, measurements.fields[l], illuminations.fields[l], ctx,
            measurements.detector);
        const double gnorm2 = kernels::sum_abs2(std::span<const double>(g));
        if (gnorm2 <= 0.0) continue;  // stationary for this illumination

        const double c_now = cost_c1_single(state.estimate, measurements.fields[l],
                                            illuminations.fields[l], ctx,
                                            measurements.detector);

        double t = state.last_step[l] > 0.0
                       ? 2.0 * state.last_step[l]
                       : config.first_step_voxel_change / kernels::max_abs(g);

        bool accepted = false;
        RIVolume candidate = state.estimate;
        for (int k = 0; k < config.ls_max; ++k) {
            candidate.values = state.estimate.values;
            kernels::axpy(candidate.values, -t, g);
            if (config.clamp_to_medium) apply_clamp(candidate);
            const double c_new = cost_c1_single(candidate, measurements.fields[l],
                                                illuminations.fields[l], ctx,
                                                measurements.detector);
            if (c_new <= c_now - config.armijo_c * t * gnorm2) {
                accepted = true;
                break;
            }
            t *= config.ls_shrink;
        }
        if (accepted) {
            state.estimate.values = std::move(candidate.values);
            state.last_step[l] = t;
        } else {
            ++state.zero_step_warnings;
            std::fprintf(stderr,
                         "warning: line search exhausted %d backtracks for illumination %zu; "
                         "taking zero step\n",
                         config.ls_max, l);
        }
    }

    std::vector<double> diff = state.estimate.values;
    for (std::size_t p = 0; p < diff.size(); ++p) diff[p] -= before[p];
    return std::sqrt(kernels::sum_abs2(std::span<const double>(diff)));
}

double reduce_c2_step(SolverState& state, double d1, const SolverConfig& config) {
    if (d1 < 0.0) throw std::invalid_argument("reduce_c2_step: d1 must be non-negative");
    if (d1 == 0.0) return 0.0;

    const std::vector<double> before = state.estimate.values;
    for (int k = 0; k < config.tv_subiterations; ++k) {
        const std::vector<double> g = grad_c2_tv(state.estimate, config.tv_epsilon);
        const double gnorm = std::sqrt(kernels::sum_abs2(std::span<const double>(g)));
        if (gnorm < 1e-30) break;
        kernels::axpy(state.estimate.values, -state.beta_current * d1 / gnorm, g);
        if (config.clamp_to_medium) apply_clamp(state.estimate);
    }

    std::vector<double> diff = state.estimate.values;
    for (std::size_t p = 0; p < diff.size(); ++p) diff[p] -= before[p];
    return std::sqrt(kernels::sum_abs2(std::span<const double>(diff)));
}

SolverState solve(const MeasurementSet& measurements, const IlluminationSet& illuminations,
                  const PropagationContext& ctx, const SolverConfig& config,
                  const RIVolume* ground_truth, const IterationCallback& on_iteration) {
    config.validate();

    SolverState state;
    if (config.init_volume) {
        state.estimate = *config.init_volume;
        state.estimate.validate();
    } else {
        state.estimate = make_uniform_volume(ctx.grid, config.n_slices, measurements.delta_z,
                                             measurements.detector_gap, config.n_medium);
    }
    check_geometry(state.estimate, measurements, illuminations, ctx);
    if (ground_truth && !ground_truth->same_geometry(state.estimate))
        throw std::invalid_argument("solve: ground truth geometry does not match estimate");

    state.beta_current = config.beta;
    state.last_step.assign(measurements.count(), 0.0);
    state.initial_c1 = cost_c1(state.estimate, measurements, illuminations, ctx).total;

    for (int m = 1; m <= config.outer_iterations; ++m) {
        IterationRow row;
        row.iter = m;
        row.beta = state.beta_current;

        const double d1 = reduce_c1_step(state, measurements, illuminations, ctx, config);
        row.d1 = d1;
        row.c1_after_data_step = cost_c1(state.estimate, measurements, illuminations, ctx).total;

        const double d2 = reduce_c2_step(state, d1, config);
        row.d2 = d2;

        if (d1 < d2) state.beta_current *= config.beta_shrink;

        row.c1 = cost_c1(state.estimate, measurements, illuminations, ctx).total;
        row.c2 = cost_c2_tv(state.estimate);
        row.e_percent = ground_truth ? relative_error(state.estimate, *ground_truth)
                                     : std::numeric_limits<double>::quiet_NaN();

        for (double v : state.estimate.values)
            if (!std::isfinite(v))
                throw std::runtime_error("solve: estimate became non-finite at iteration " +
                                         std::to_string(m));
        if (row.c1 > 10.0 * state.initial_c1 && state.initial_c1 > 0.0)
            throw std::runtime_error(
                "solve: divergence detected at iteration " + std::to_string(m) + " (C1 = " +
                std::to_string(row.c1) + " > 10x initial " + std::to_string(state.initial_c1) +
                ")");

        state.log.push_back(row);
        if (on_iteration) on_iteration(row);
    }
    return state;
}

}  // namespace asit
