#include "asit/forward.hpp"

#include <cmath>
#include <stdexcept>

#include "asit/kernels.hpp"
#include "asit/rng.hpp"

namespace asit {

double DetectorModel::noise_std() const {
    if (!photons_per_pixel) return 0.0;
    return 1.0 / std::sqrt(2.0 * *photons_per_pixel);
}

void DetectorModel::validate(const Grid2D& grid, double wavelength) const {
    if (!(na > 0.0 && na < 1.0))
        throw std::invalid_argument("DetectorModel: na must lie in (0,1)");
    if (photons_per_pixel && !(*photons_per_pixel > 0.0))
        throw std::invalid_argument("DetectorModel: photons_per_pixel must be positive");
    const double fna = f_na(wavelength);
    if (fna >= grid.nyquist_x() || fna >= grid.nyquist_y())
        throw std::invalid_argument("DetectorModel: f_NA exceeds the grid Nyquist frequency");
}

namespace {

ForwardTrace msbp_run(const RIVolume& volume, const ComplexField2D& illumination,
                      const PropagationContext& ctx, const DetectorModel& detector,
                      bool keep_trace) {
    volume.validate();
    ctx.validate();
    detector.validate(ctx.grid, ctx.wavelength);
    if (illumination.grid() != volume.grid || illumination.grid() != ctx.grid)
        throw std::invalid_argument("msbp_forward: grid mismatch");

    ForwardTrace trace;
    ComplexField2D u = illumination;
    for (int j = 0; j < volume.n_slices; ++j) {
        if (keep_trace) trace.entering.push_back(u);
        const ComplexField2D t = transmission(volume, j, ctx.wavelength);
        kernels::multiply_inplace(u.values(), t.values());
        if (j + 1 < volume.n_slices) u = propagate(u, volume.delta_z, ctx);
    }
    u = propagate(u, volume.detector_gap, ctx);
    trace.output = bandlimit(u, detector.f_na(ctx.wavelength));
    return trace;
}

}  // namespace

ComplexField2D msbp_forward(const RIVolume& volume, const ComplexField2D& illumination,
                            const PropagationContext& ctx, const DetectorModel& detector) {
    return msbp_run(volume, illumination, ctx, detector, false).output;
}

ForwardTrace msbp_forward_trace(const RIVolume& volume, const ComplexField2D& illumination,
                                const PropagationContext& ctx, const DetectorModel& detector) {
    return msbp_run(volume, illumination, ctx, detector, true);
}

ComplexField2D detect(const ComplexField2D& field, const DetectorModel& detector,
                      std::uint64_t illumination_index) {
    if (!detector.photons_per_pixel) return field;
    const double sigma = detector.noise_std();
    Rng rng = Rng(detector.noise_seed).derive(0x4E4F4953u).derive(illumination_index);
    ComplexField2D out = field;
    for (cplx& v : out.values())
        v += cplx(sigma * rng.gaussian(), sigma * rng.gaussian());
    return out;
}

MeasurementSet acquire(const RIVolume& volume, const IlluminationSet& illuminations,
                       const PropagationContext& ctx, const DetectorModel& detector) {
    if (illuminations.count() == 0)
        throw std::invalid_argument("acquire: need at least one illumination");
    MeasurementSet set;
    set.detector = detector;
    set.delta_z = volume.delta_z;
    set.detector_gap = volume.detector_gap;
    set.wavelength = ctx.wavelength;
    set.fields.reserve(illuminations.count());
    for (std::size_t l = 0; l < illuminations.count(); ++l)
        set.fields.push_back(
            detect(msbp_forward(volume, illuminations.fields[l], ctx, detector), detector, l));
    return set;
}

}  // namespace asit
