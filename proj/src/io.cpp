#include "asit/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace asit {

namespace {

void append_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void append_f64(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

class Reader {
public:
    Reader(const std::filesystem::path& path) : path_(path.string()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error(path_ + ": cannot open");
        bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    void expect_magic(const char* magic) {
        if (bytes_.size() < pos_ + 8 || std::memcmp(bytes_.data() + pos_, magic, 8) != 0)
            throw std::runtime_error(path_ + ": bad magic, expected " + magic);
        pos_ += 8;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + b]))
                 << (8 * b);
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b]))
                 << (8 * b);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    void done() {
        if (pos_ != bytes_.size())
            throw std::runtime_error(path_ + ": trailing bytes after payload");
    }

private:
    void need(std::size_t n) {
        if (bytes_.size() < pos_ + n) throw std::runtime_error(path_ + ": truncated file");
    }

    std::string path_;
    std::string bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field(const std::filesystem::path& path, const ComplexField2D& field,
                 double wavelength) {
    field.grid().validate();
    std::string out;
    out.reserve(40 + field.size() * 16);
    out.append("ASITFLD1");
    append_u32(out, static_cast<std::uint32_t>(field.grid().nx));
    append_u32(out, static_cast<std::uint32_t>(field.grid().ny));
    append_f64(out, field.grid().dx);
    append_f64(out, field.grid().dy);
    append_f64(out, wavelength);
    for (const cplx& v : field.values()) {
        append_f64(out, v.real());
        append_f64(out, v.imag());
    }
    atomic_write(path, out);
}

FieldFile read_field(const std::filesystem::path& path) {
    Reader r(path);
    r.expect_magic("ASITFLD1");
    const auto nx = static_cast<int>(r.u32());
    const auto ny = static_cast<int>(r.u32());
    Grid2D grid{nx, ny, r.f64(), r.f64()};
    grid.validate();
    const double wavelength = r.f64();
    std::vector<cplx> values(grid.size());
    for (cplx& v : values) {
        const double re = r.f64();
        const double im = r.f64();
        v = cplx(re, im);
    }
    r.done();
    return {ComplexField2D(grid, std::move(values)), wavelength};
}

void write_volume(const std::filesystem::path& path, const RIVolume& volume,
                  double wavelength) {
    volume.validate();
    std::string out;
    out.reserve(68 + volume.values.size() * 8);
    out.append("ASITVOL1");
    append_u32(out, static_cast<std::uint32_t>(volume.grid.nx));
    append_u32(out, static_cast<std::uint32_t>(volume.grid.ny));
    append_u32(out, static_cast<std::uint32_t>(volume.n_slices));
    append_f64(out, volume.grid.dx);
    append_f64(out, volume.grid.dy);
    append_f64(out, volume.delta_z);
    append_f64(out, volume.detector_gap);
    append_f64(out, volume.n_medium);
    append_f64(out, wavelength);
    for (double v : volume.values) append_f64(out, v);
    atomic_write(path, out);
}

VolumeFile read_volume(const std::filesystem::path& path) {
    Reader r(path);
    r.expect_magic("ASITVOL1");
    RIVolume vol;
    vol.grid.nx = static_cast<int>(r.u32());
    vol.grid.ny = static_cast<int>(r.u32());
    vol.n_slices = static_cast<int>(r.u32());
    vol.grid.dx = r.f64();
    vol.grid.dy = r.f64();
    vol.delta_z = r.f64();
    vol.detector_gap = r.f64();
    vol.n_medium = r.f64();
    const double wavelength = r.f64();
    vol.grid.validate();
    if (vol.n_slices < 1) throw std::runtime_error(path.string() + ": bad slice count");
    vol.values.resize(vol.voxel_count());
    for (double& v : vol.values) v = r.f64();
    r.done();
    vol.validate();
    return {std::move(vol), wavelength};
}

void write_pgm16(const std::filesystem::path& path, const std::vector<double>& data, int width,
                 int height, double vmin, double vmax) {
    if (width < 1 || height < 1 ||
        data.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("write_pgm16: data size does not match dimensions");

    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    out.reserve(out.size() + data.size() * 2);

    const bool degenerate = !(vmin < vmax);
    if (degenerate)
        std::fprintf(stderr,
                     "warning: write_pgm16: degenerate normalization (vmin == vmax), "
                     "writing all-zero image %s\n",
                     path.string().c_str());

    for (double v : data) {
        std::uint16_t s = 0;
        if (!degenerate) {
            const double t = std::round(65535.0 * (v - vmin) / (vmax - vmin));
            s = static_cast<std::uint16_t>(std::clamp(t, 0.0, 65535.0));
        }
        out.push_back(static_cast<char>((s >> 8) & 0xFF));  // big-endian per PGM
        out.push_back(static_cast<char>(s & 0xFF));
    }
    atomic_write(path, out);
}

void write_pgm16_auto(const std::filesystem::path& path, const std::vector<double>& data,
                      int width, int height) {
    double vmin = data.empty() ? 0.0 : data[0];
    double vmax = vmin;
    for (double v : data) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    write_pgm16(path, data, width, height, vmin, vmax);
}

void write_iteration_log(const std::filesystem::path& path,
                         const std::vector<IterationRow>& rows) {
    std::string out = "iter,c1,c2,d1,d2,beta,e_percent\n";
    for (const IterationRow& r : rows) {
        out += std::to_string(r.iter);
        out += "," + format_double(r.c1);
        out += "," + format_double(r.c2);
        out += "," + format_double(r.d1);
        out += "," + format_double(r.d2);
        out += "," + format_double(r.beta);
        out += "," + format_double(r.e_percent);
        out += "\n";
    }
    atomic_write(path, out);
}

void write_design_curve(const std::filesystem::path& path,
                        const std::vector<std::pair<double, double>>& rows) {
    std::string out = "bwr,z_d_m\n";
    for (const auto& [bwr, zd] : rows) out += format_double(bwr) + "," + format_double(zd) + "\n";
    atomic_write(path, out);
}

void write_key_values(const std::filesystem::path& path, const KeyValues& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    atomic_write(path, out);
}

KeyValues read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open");
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path.string() + ": malformed line: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

void write_plot_pgm(const std::filesystem::path& path,
                    const std::vector<std::pair<double, double>>& rows, int width, int height) {
    std::vector<double> img(static_cast<std::size_t>(width) * height, 0.0);
    if (rows.size() >= 2) {
        bool logy = true;
        for (const auto& [x, y] : rows)
            if (!(y > 0.0)) logy = false;
        double xmin = rows.front().first, xmax = xmin;
        double ymin = logy ? std::log10(rows.front().second) : rows.front().second, ymax = ymin;
        auto yval = [&](double y) { return logy ? std::log10(y) : y; };
        for (const auto& [x, y] : rows) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, yval(y));
            ymax = std::max(ymax, yval(y));
        }
        if (xmax > xmin && ymax > ymin) {
            auto px = [&](double x) {
                return std::clamp(static_cast<int>((x - xmin) / (xmax - xmin) * (width - 1)), 0,
                                  width - 1);
            };
            auto py = [&](double y) {
                return std::clamp(
                    height - 1 - static_cast<int>((yval(y) - ymin) / (ymax - ymin) * (height - 1)),
                    0, height - 1);
            };
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const int x0 = px(rows[i].first), y0 = py(rows[i].second);
                const int x1 = px(rows[i + 1].first), y1 = py(rows[i + 1].second);
                const int steps = std::max(std::abs(x1 - x0), std::abs(y1 - y0)) + 1;
                for (int s = 0; s <= steps; ++s) {
                    const int x = x0 + (x1 - x0) * s / steps;
                    const int y = y0 + (y1 - y0) * s / steps;
                    img[static_cast<std::size_t>(y) * width + x] = 1.0;
                }
            }
        }
    }
    write_pgm16(path, img, width, height, 0.0, 1.0);
}

}  // namespace asit
