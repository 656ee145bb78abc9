#ifndef ASIT_METRICS_HPP
#define ASIT_METRICS_HPP

#include <vector>

#include "asit/scene.hpp"

namespace asit {

/// Relative reconstruction error in percent over full RI values including
/// the background medium: 100 * ||n_gt - n|| / ||n_gt||.
double relative_error(const RIVolume& estimate, const RIVolume& ground_truth);

/// Contrast-referred variant: the same ratio computed on (n - n_medium).
/// More sensitive than relative_error, whose norm is dominated by the
/// background; reported separately and clearly labeled.
double relative_error_contrast(const RIVolume& estimate, const RIVolume& ground_truth);

/// Cross-talk indicator for slice j: energy of the slice-j error restricted
/// to the union of the other slices' letter supports, normalized by the
/// slice-j ground-truth contrast energy. 0 for a perfect reconstruction.
double crosstalk_index(const RIVolume& estimate, const RIVolume& ground_truth, int j);

struct EvaluationReport {
    double e_percent_global = 0.0;
    double e_percent_contrast = 0.0;
    std::vector<double> e_percent_per_slice;
    std::vector<double> crosstalk_index_per_slice;
    double runtime_seconds = 0.0;  // console diagnostic; not serialized
};

EvaluationReport evaluate(const RIVolume& estimate, const RIVolume& ground_truth);

}  // namespace asit

#endif
