#include "asit/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "asit/kernels.hpp"

namespace asit {

namespace {

void check_same_geometry(const RIVolume& a, const RIVolume& b, const char* where) {
    if (!a.same_geometry(b))
        throw std::invalid_argument(std::string(where) + ": volume geometries differ");
}

double norm_ratio_percent(std::span<const double> err, std::span<const double> ref,
                          const char* where) {
    const double ref_norm2 = kernels::sum_abs2(ref);
    if (ref_norm2 <= 0.0)
        throw std::domain_error(std::string(where) + ": reference volume has zero norm");
    return 100.0 * std::sqrt(kernels::sum_abs2(err) / ref_norm2);
}

}  // namespace

double relative_error(const RIVolume& estimate, const RIVolume& ground_truth) {
    check_same_geometry(estimate, ground_truth, "relative_error");
    std::vector<double> err(ground_truth.values);
    for (std::size_t p = 0; p < err.size(); ++p) err[p] -= estimate.values[p];
    return norm_ratio_percent(err, ground_truth.values, "relative_error");
}

double relative_error_contrast(const RIVolume& estimate, const RIVolume& ground_truth) {
    check_same_geometry(estimate, ground_truth, "relative_error_contrast");
    std::vector<double> err(ground_truth.values.size());
    std::vector<double> ref(ground_truth.values.size());
    for (std::size_t p = 0; p < err.size(); ++p) {
        ref[p] = ground_truth.values[p] - ground_truth.n_medium;
        err[p] = ref[p] - (estimate.values[p] - estimate.n_medium);
    }
    return norm_ratio_percent(err, ref, "relative_error_contrast");
}

double crosstalk_index(const RIVolume& estimate, const RIVolume& ground_truth, int j) {
    check_same_geometry(estimate, ground_truth, "crosstalk_index");
    if (j < 0 || j >= ground_truth.n_slices)
        throw std::out_of_range("crosstalk_index: slice index out of range");

    const std::size_t npix = ground_truth.grid.size();

    // union of the other slices' supports (voxels off the background)
    std::vector<unsigned char> other(npix, 0);
    for (int k = 0; k < ground_truth.n_slices; ++k) {
        if (k == j) continue;
        const auto gk = ground_truth.slice(k);
        for (std::size_t p = 0; p < npix; ++p)
            if (gk[p] != ground_truth.n_medium) other[p] = 1;
    }

    const auto gj = ground_truth.slice(j);
    const auto ej = estimate.slice(j);
    double leak = 0.0, contrast = 0.0;
    for (std::size_t p = 0; p < npix; ++p) {
        const double c = gj[p] - ground_truth.n_medium;
        contrast += c * c;
        if (other[p]) {
            const double e = ej[p] - gj[p];
            leak += e * e;
        }
    }
    if (contrast <= 0.0)
        throw std::domain_error("crosstalk_index: slice has no ground-truth contrast");
    return leak / contrast;
}

EvaluationReport evaluate(const RIVolume& estimate, const RIVolume& ground_truth) {
    check_same_geometry(estimate, ground_truth, "evaluate");
    EvaluationReport rep;
    rep.e_percent_global = relative_error(estimate, ground_truth);
    rep.e_percent_contrast = relative_error_contrast(estimate, ground_truth);

    const std::size_t npix = ground_truth.grid.size();
    for (int j = 0; j < ground_truth.n_slices; ++j) {
        const auto gj = ground_truth.slice(j);
        const auto ej = estimate.slice(j);
        double err2 = 0.0, ref2 = 0.0;
        for (std::size_t p = 0; p < npix; ++p) {
            const double d = gj[p] - ej[p];
            err2 += d * d;
            ref2 += gj[p] * gj[p];
        }
        rep.e_percent_per_slice.push_back(100.0 * std::sqrt(err2 / ref2));
        rep.crosstalk_index_per_slice.push_back(crosstalk_index(estimate, ground_truth, j));
    }
    return rep;
}

}  // namespace asit
