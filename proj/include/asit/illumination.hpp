#ifndef ASIT_ILLUMINATION_HPP
#define ASIT_ILLUMINATION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "asit/field.hpp"
#include "asit/propagation.hpp"

namespace asit {

enum class IlluminationKind { plane, speckle };

struct IlluminationSpec {
    IlluminationKind kind = IlluminationKind::plane;
    double target_bwr = 0.0;    // speckle only, in [0.05, 1]
    std::uint64_t seed = 0;     // speckle only
    Grid2D grid;

    void validate() const;
};

/// Unit axial plane wave: constant 1+0i.
ComplexField2D plane_wave(const Grid2D& grid);

struct SpeckleField {
    ComplexField2D field;
    double achieved_bwr = 0.0;
    double phase_cutoff = 0.0;  // the tuned low-pass cutoff [cycles/m]
};

/// Tuning failed to bring the measured BWR within tolerance of the target.
class SpeckleTuningError : public std::runtime_error {
public:
    SpeckleTuningError(const std::string& msg, double best_bwr)
        : std::runtime_error(msg), best_bwr_(best_bwr) {}
    double best_bwr() const { return best_bwr_; }

private:
    double best_bwr_;
};

/// Unit-amplitude speckle-phase illumination: i.i.d. uniform [0,2*pi) phases
/// are low-pass filtered with a disk of cutoff f_c, renormalized to span
/// [0, 2*pi] peak to peak, and exponentiated. f_c is tuned by bisection so
/// the BWR of the output, measured against the given NA, lands within
/// +-0.05 of spec.target_bwr. Deterministic per (seed, spec, grid).
SpeckleField speckle_illumination(const IlluminationSpec& spec, const PropagationContext& ctx,
                                  double na);

struct IlluminationMeta {
    IlluminationKind kind = IlluminationKind::plane;
    std::uint64_t seed = 0;
    double target_bwr = 0.0;
    double achieved_bwr = 0.0;
};

/// L input fields at the first-slice plane plus their synthesis metadata.
struct IlluminationSet {
    std::vector<ComplexField2D> fields;
    std::vector<IlluminationMeta> meta;

    std::size_t count() const { return fields.size(); }
};

}  // namespace asit

#endif
