#ifndef ASIT_EXPERIMENTS_HPP
#define ASIT_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asit/io.hpp"
#include "asit/metrics.hpp"
#include "asit/recon.hpp"

namespace asit {

/// A full end-to-end simulation scenario: phantom -> illuminations ->
/// acquisition -> reconstruction -> evaluation. Every random stream is
/// derived deterministically from master_seed.
struct ScenarioSpec {
    std::string name = "custom";
    std::string letters = "AB";
    double delta_z = 150e-6;
    double detector_gap = 100e-6;
    int grid_n = 200;
    double pixel = 1e-6;
    double wavelength = 650e-9;
    double na = 0.3;
    std::optional<double> photons_per_pixel = 5e4;
    std::vector<IlluminationKind> illuminations{IlluminationKind::plane};
    double target_bwr = 0.6;  // used by speckle illuminations
    double n_inside = 1.548;
    double n_medium = 1.518;
    SolverConfig solver;
    std::uint64_t master_seed = 1;

    Grid2D grid() const { return Grid2D{grid_n, grid_n, pixel, pixel}; }
    PropagationContext context() const { return PropagationContext{wavelength, grid()}; }
    void validate() const;

    std::uint64_t illumination_seed(std::size_t l) const;
    std::uint64_t noise_seed() const;
};

/// Shipped presets, one per figure row of the reference study:
/// pw-2slice-150, pw-2slice-100, speckle-2slice-{30,20,10},
/// speckle-3slice-L1, speckle-4slice-L1, speckle-4slice-L2.
ScenarioSpec scenario_preset(const std::string& name);
std::vector<std::string> preset_names();

KeyValues scenario_to_kv(const ScenarioSpec& spec);
ScenarioSpec scenario_from_kv(const KeyValues& kv);

RIVolume scenario_phantom(const ScenarioSpec& spec);
IlluminationSet scenario_illuminations(const ScenarioSpec& spec);
DetectorModel scenario_detector(const ScenarioSpec& spec);

struct ScenarioResult {
    EvaluationReport report;
    SolverState state;
    RIVolume ground_truth;
};

/// Runs the scenario and writes the full artifact tree into out_dir (which
/// must not already exist unless force is set). The tree is byte-identical
/// across reruns with the same spec and thread count.
ScenarioResult run_scenario(const ScenarioSpec& spec, const std::filesystem::path& out_dir,
                            bool force = false);

/// In-memory variant (no files written).
ScenarioResult run_scenario_in_memory(const ScenarioSpec& spec);

struct SweepCell {
    double delta_z = 0.0;
    double bwr = 0.0;  // <= 0 selects plane-wave illumination
    int n_slices = 0;
    int n_illuminations = 0;
    std::uint64_t master_seed = 0;
    double e_percent = 0.0;
    double e_percent_contrast = 0.0;
    std::string status;  // "ok" or the error message
};

/// Cartesian sweep over delta_z x BWR x slice count x illumination count.
/// Per-cell failures are recorded and the sweep continues. Writes one
/// artifact tree per cell plus an aggregate sweep.csv.
std::vector<SweepCell> sweep(const ScenarioSpec& base, const std::vector<double>& delta_z_list,
                             const std::vector<double>& bwr_list,
                             const std::vector<int>& slice_count_list,
                             const std::vector<int>& illumination_count_list,
                             const std::filesystem::path& out_dir, bool force = false);

}  // namespace asit

#endif
