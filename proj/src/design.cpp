#include "asit/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asit/fft.hpp"

namespace asit {

double concentration_q(const ComplexField2D& field, double f, double f_na) {
    if (!(f_na > 0.0)) throw std::invalid_argument("concentration_q: f_na must be positive");
    if (f < 0.0 || f > f_na)
        throw std::invalid_argument("concentration_q: need 0 <= f <= f_na");

    const Grid2D& g = field.grid();
    ComplexSpectrum2D spec = fft2(field);
    const std::vector<double> fr = radial_frequency(g);
    const auto vals = spec.values();

    double num = 0.0, den = 0.0;
    for (std::size_t p = 0; p < vals.size(); ++p) {
        if (fr[p] > f_na) continue;
        const double e = std::norm(vals[p]);
        den += e;
        if (fr[p] <= f) num += e;
    }
    if (den <= 0.0)
        throw std::domain_error("concentration_q: field has no spectral energy inside the NA disk");
    return num / den;
}

EffectiveBandwidth effective_bandwidth(const ComplexField2D& field, double f_na,
                                       double threshold) {
    if (!(f_na > 0.0))
        throw std::invalid_argument("effective_bandwidth: f_na must be positive");
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("effective_bandwidth: threshold must be in (0,1]");

    const Grid2D& g = field.grid();
    ComplexSpectrum2D spec = fft2(field);
    const std::vector<double> fr = radial_frequency(g);
    const auto vals = spec.values();

    double den = 0.0;
    for (std::size_t p = 0; p < vals.size(); ++p)
        if (fr[p] <= f_na) den += std::norm(vals[p]);
    if (den <= 0.0)
        throw std::domain_error(
            "effective_bandwidth: field has no spectral energy inside the NA disk");

    const double df = g.fundamental();
    for (std::size_t m = 0;; ++m) {
        const double edge = std::min((m + 1) * df, f_na);
        double num = 0.0;
        for (std::size_t p = 0; p < vals.size(); ++p)
            if (fr[p] <= edge) num += std::norm(vals[p]);
        if (num / den >= threshold || edge >= f_na) {
            EffectiveBandwidth out;
            out.f_bwr = edge;
            out.bwr = edge / f_na;
            return out;
        }
    }
}

double decorrelation_distance(double bwr, double na, double wavelength) {
    if (!(bwr > 0.0))
        throw std::domain_error("decorrelation_distance: bwr must be positive (z_d diverges)");
    if (!(na > 0.0)) throw std::invalid_argument("decorrelation_distance: na must be positive");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("decorrelation_distance: wavelength must be positive");
    const double na_bwr = na * bwr;
    return wavelength / (na_bwr * na_bwr);
}

std::vector<std::pair<double, double>> design_curve(double na, double wavelength,
                                                    const std::vector<double>& bwr_samples) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(bwr_samples.size());
    for (double b : bwr_samples) {
        if (!(b > 0.0 && b <= 1.0))
            throw std::invalid_argument("design_curve: bwr samples must lie in (0,1]");
        rows.emplace_back(b, decorrelation_distance(b, na, wavelength));
    }
    return rows;
}

SpectralReport spectral_report(const ComplexField2D& field, double na, double wavelength,
                               double threshold) {
    SpectralReport rep;
    rep.f_na = na / wavelength;

    const EffectiveBandwidth eb = effective_bandwidth(field, rep.f_na, threshold);
    rep.f_bwr = eb.f_bwr;
    rep.bwr = eb.bwr;
    rep.z_d = rep.bwr > 0.0 ? decorrelation_distance(rep.bwr, na, wavelength) : 0.0;

    const Grid2D& g = field.grid();
    const double df = g.fundamental();
    for (std::size_t m = 0;; ++m) {
        const double edge = std::min((m + 1) * df, rep.f_na);
        rep.q_profile.emplace_back(edge, concentration_q(field, edge, rep.f_na));
        if (edge >= rep.f_na) break;
    }
    return rep;
}

}  // namespace asit
