#ifndef ASIT_RECON_HPP
#define ASIT_RECON_HPP

#include <functional>
#include <optional>
#include <vector>

#include "asit/forward.hpp"
#include "asit/illumination.hpp"
#include "asit/scene.hpp"

namespace asit {

/// Alternating-minimization solver configuration. Defaults match the
/// reference study: 100 outer iterations, K = 50 TV sub-iterations,
/// beta = 0.4 shrunk by 0.95 whenever d1 < d2.
struct SolverConfig {
    int outer_iterations = 100;
    int tv_subiterations = 50;  // K
    double beta = 0.4;
    double beta_shrink = 0.95;
    double tv_epsilon = 1e-12;  // [RI^2]
    double armijo_c = 1e-4;
    double ls_shrink = 0.5;
    int ls_max = 30;
    /// Max abs voxel change targeted by the very first line-search step.
    double first_step_voxel_change = 0.01;
    /// Optional lower clamp of the estimate at n_medium.
    bool clamp_to_medium = false;

    /// Geometry of the unknown volume when no init_volume is given:
    /// uniform n_medium ("medium" initialization).
    int n_slices = 0;
    double n_medium = 1.518;
    std::optional<RIVolume> init_volume;

    void validate() const;
};

struct IterationRow {
    int iter = 0;       // 1-based outer iteration
    double c1 = 0.0;    // committed estimate, end of iteration
    double c2 = 0.0;    // unsmoothed TV of the committed estimate
    double d1 = 0.0;
    double d2 = 0.0;
    double beta = 0.0;  // value used during this iteration
    double e_percent = 0.0;  // NaN when no ground truth was supplied
    // diagnostic only (not serialized): total C1 right after the data step
    double c1_after_data_step = 0.0;
};

struct SolverState {
    RIVolume estimate;
    double beta_current = 0.0;
    std::vector<double> last_step;  // per-illumination last accepted t_l
    std::vector<IterationRow> log;
    double initial_c1 = 0.0;
    int zero_step_warnings = 0;
};

struct CostC1 {
    double total = 0.0;
    std::vector<double> per_illumination;
};

/// Data term sum_l ||u_meas_l - A_l(n)||_2^2 with the noiseless forward.
CostC1 cost_c1(const RIVolume& estimate, const MeasurementSet& measurements,
               const IlluminationSet& illuminations, const PropagationContext& ctx);

/// Gradient of one illumination's data term with respect to every voxel,
/// computed by the adjoint-state recursion through the MSBP operator.
/// Layout matches RIVolume::values.
std::vector<double> grad_c1_slicewise(const RIVolume& estimate,
                                      const ComplexField2D& measurement,
                                      const ComplexField2D& illumination,
                                      const PropagationContext& ctx,
                                      const DetectorModel& detector);

/// Unsmoothed total variation of the volume (forward differences, clamped
/// far edge; no z-differences for single-slice volumes).
double cost_c2_tv(const RIVolume& estimate);

/// Gradient of the eps-smoothed total variation.
std::vector<double> grad_c2_tv(const RIVolume& estimate, double tv_epsilon);

/// One sequential pass of per-illumination gradient steps with Armijo
/// backtracking line searches. Returns d1 = ||n_after - n_before||_2.
double reduce_c1_step(SolverState& state, const MeasurementSet& measurements,
                      const IlluminationSet& illuminations, const PropagationContext& ctx,
                      const SolverConfig& config);

/// K sub-iterations of normalized TV descent with step beta*d1. Returns
/// d2 = ||n_final - n_intermediate||_2. No-op when d1 = 0 or the TV
/// gradient vanishes.
double reduce_c2_step(SolverState& state, double d1, const SolverConfig& config);

using IterationCallback = std::function<void(const IterationRow&)>;

/// Full alternating loop. Throws on divergence (C1 exceeding 10x its
/// initial value). Deterministic given inputs and config.
SolverState solve(const MeasurementSet& measurements, const IlluminationSet& illuminations,
                  const PropagationContext& ctx, const SolverConfig& config,
                  const RIVolume* ground_truth = nullptr,
                  const IterationCallback& on_iteration = {});

}  // namespace asit

#endif
