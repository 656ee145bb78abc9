#ifndef ASIT_DESIGN_HPP
#define ASIT_DESIGN_HPP

#include <utility>
#include <vector>

#include "asit/field.hpp"

namespace asit {

/// Default threshold on the energy concentration ratio that defines the
/// effective bandwidth.
inline constexpr double kBwrThreshold = 0.99;

/// Energy concentration ratio: spectral energy at radial frequencies
/// |f_sample| <= f divided by the energy at |f_sample| <= f_na.
/// Monotone non-decreasing in f; 1 at f = f_na. Throws if the field has no
/// energy inside the NA disk.
double concentration_q(const ComplexField2D& field, double f, double f_na);

struct EffectiveBandwidth {
    double f_bwr = 0.0;  // [cycles/m]
    double bwr = 0.0;    // f_bwr / f_na
};

/// Scans radial bins of width 1/(nx*dx) in increasing order and returns the
/// first bin upper edge (clamped to f_na) where q reaches the threshold.
EffectiveBandwidth effective_bandwidth(const ComplexField2D& field, double f_na,
                                       double threshold = kBwrThreshold);

/// De-correlation distance z_d = wavelength / (na*bwr)^2.
double decorrelation_distance(double bwr, double na, double wavelength);

/// (bwr, z_d) table over the given samples.
std::vector<std::pair<double, double>> design_curve(double na, double wavelength,
                                                    const std::vector<double>& bwr_samples);

struct SpectralReport {
    double f_na = 0.0;
    double f_bwr = 0.0;
    double bwr = 0.0;
    double z_d = 0.0;
    // (radial bin upper edge, cumulative q), edges clamped to f_na
    std::vector<std::pair<double, double>> q_profile;
};

SpectralReport spectral_report(const ComplexField2D& field, double na, double wavelength,
                               double threshold = kBwrThreshold);

}  // namespace asit

#endif
