#ifndef ASIT_FORWARD_HPP
#define ASIT_FORWARD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "asit/illumination.hpp"
#include "asit/propagation.hpp"
#include "asit/scene.hpp"

namespace asit {

/// Afocal detection model: NA low-pass at unit magnification plus optional
/// additive complex Gaussian detection noise.
struct DetectorModel {
    double na = 0.3;
    /// Average photons per pixel N0; empty means noiseless detection.
    std::optional<double> photons_per_pixel;
    std::uint64_t noise_seed = 0;

    double f_na(double wavelength) const { return na / wavelength; }
    /// Per-component noise std 1/sqrt(2*N0); 0 when noiseless.
    double noise_std() const;
    /// Also checks f_na against the grid Nyquist.
    void validate(const Grid2D& grid, double wavelength) const;
};

/// L detected complex fields at plane P plus the acquisition geometry.
struct MeasurementSet {
    std::vector<ComplexField2D> fields;
    DetectorModel detector;
    double delta_z = 0.0;
    double detector_gap = 0.0;
    double wavelength = 0.0;

    std::size_t count() const { return fields.size(); }
};

/// MSBP forward operator: starting from the illumination, multiply by each
/// slice transmission, propagate by delta_z between slices, propagate by
/// detector_gap to plane P, and band-limit to f_NA. Noise is not applied
/// here.
ComplexField2D msbp_forward(const RIVolume& volume, const ComplexField2D& illumination,
                            const PropagationContext& ctx, const DetectorModel& detector);

/// msbp_forward that also returns the field entering each slice (before its
/// transmission), as needed by the adjoint-state gradient.
struct ForwardTrace {
    ComplexField2D output;
    std::vector<ComplexField2D> entering;  // entering[j]: field incident on slice j
};
ForwardTrace msbp_forward_trace(const RIVolume& volume, const ComplexField2D& illumination,
                                const PropagationContext& ctx, const DetectorModel& detector);

/// Adds i.i.d. Gaussian noise of std 1/sqrt(2*N0) independently to the real
/// and imaginary part of every pixel; identity when noiseless. The stream
/// is derived from (noise_seed, illumination_index), so per-illumination
/// acquisitions are order-independent.
ComplexField2D detect(const ComplexField2D& field, const DetectorModel& detector,
                      std::uint64_t illumination_index = 0);

/// msbp_forward + detect over every illumination.
MeasurementSet acquire(const RIVolume& volume, const IlluminationSet& illuminations,
                       const PropagationContext& ctx, const DetectorModel& detector);

}  // namespace asit

#endif
