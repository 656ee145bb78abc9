#ifndef ASIT_IO_HPP
#define ASIT_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "asit/field.hpp"
#include "asit/recon.hpp"
#include "asit/scene.hpp"

namespace asit {

// Binary field format "ASITFLD1": 8 magic bytes, LE u32 nx, u32 ny,
// LE f64 dx_m, dy_m, wavelength_m, then nx*ny (re, im) f64 pairs,
// row-major. "ASITVOL1" is the analogous volume format with header
// u32 nx, ny, nz and f64 dx_m, dy_m, dz_m, detector_gap_m, n_medium,
// wavelength_m. Readers reject bad magic and truncated payloads. All
// single-file writes go through a temp file + rename.

struct FieldFile {
    ComplexField2D field;
    double wavelength = 0.0;
};

void write_field(const std::filesystem::path& path, const ComplexField2D& field,
                 double wavelength);
FieldFile read_field(const std::filesystem::path& path);

struct VolumeFile {
    RIVolume volume;
    double wavelength = 0.0;
};

void write_volume(const std::filesystem::path& path, const RIVolume& volume,
                  double wavelength);
VolumeFile read_volume(const std::filesystem::path& path);

/// 16-bit binary PGM (P5, maxval 65535, big-endian samples):
/// sample = round(65535 * (v - vmin)/(vmax - vmin)) clamped to [0, 65535].
/// Degenerate normalization (vmin == vmax) writes an all-zero image and
/// warns on stderr.
void write_pgm16(const std::filesystem::path& path, const std::vector<double>& data, int width,
                 int height, double vmin, double vmax);

/// Auto normalization variant: vmin/vmax from the data extrema.
void write_pgm16_auto(const std::filesystem::path& path, const std::vector<double>& data,
                      int width, int height);

/// Iteration log CSV: header iter,c1,c2,d1,d2,beta,e_percent.
void write_iteration_log(const std::filesystem::path& path,
                         const std::vector<IterationRow>& rows);

/// Design-curve CSV: header bwr,z_d_m.
void write_design_curve(const std::filesystem::path& path,
                        const std::vector<std::pair<double, double>>& rows);

/// Line-oriented "key = value" file. Unknown keys are preserved; order is
/// the insertion order of the writer.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
void write_key_values(const std::filesystem::path& path, const KeyValues& kv);
KeyValues read_key_values(const std::filesystem::path& path);

/// Fixed "%.17g" formatting used by every text artifact, so reruns are
/// byte-identical.
std::string format_double(double v);

/// Write a whole file atomically (temp + rename).
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

/// Crude line plot of (x, y) pairs to a PGM raster, y on a log10 scale when
/// all y > 0. Convenience only; the CSV is the contract.
void write_plot_pgm(const std::filesystem::path& path,
                    const std::vector<std::pair<double, double>>& rows, int width = 640,
                    int height = 480);

}  // namespace asit

#endif
