#include "asit/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "asit/forward.hpp"
#include "asit/rng.hpp"

namespace asit {

namespace {

constexpr std::uint64_t kIllumTag = 0x494C4C5530303030ULL;
constexpr std::uint64_t kNoiseTag = 0x4E4F495345303030ULL;

std::string kind_list_string(const std::vector<IlluminationKind>& kinds) {
    std::string s;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (i) s += ",";
        s += kinds[i] == IlluminationKind::plane ? "plane" : "speckle";
    }
    return s;
}

std::vector<IlluminationKind> parse_kind_list(const std::string& s) {
    std::vector<IlluminationKind> kinds;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (tok == "plane")
            kinds.push_back(IlluminationKind::plane);
        else if (tok == "speckle")
            kinds.push_back(IlluminationKind::speckle);
        else
            throw std::invalid_argument("scenario: unknown illumination kind '" + tok + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return kinds;
}

std::string slice_image_name(const char* prefix, int j) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_slice_%02d.pgm", prefix, j);
    return buf;
}

std::string indexed_name(const char* prefix, std::size_t l, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03zu%s", prefix, l, suffix);
    return buf;
}

}  // namespace

void ScenarioSpec::validate() const {
    grid().validate();
    if (letters.empty() || letters.size() > 4)
        throw std::invalid_argument("scenario: phantom needs 1 to 4 letters");
    if (illuminations.empty())
        throw std::invalid_argument("scenario: need at least one illumination");
    if (!(delta_z > 0.0)) throw std::invalid_argument("scenario: delta_z must be positive");
    if (detector_gap < 0.0)
        throw std::invalid_argument("scenario: detector_gap must be non-negative");
    if (!(wavelength > 0.0)) throw std::invalid_argument("scenario: wavelength must be positive");
}

std::uint64_t ScenarioSpec::illumination_seed(std::size_t l) const {
    return Rng(master_seed).derive(kIllumTag + l).seed();
}

std::uint64_t ScenarioSpec::noise_seed() const {
    return Rng(master_seed).derive(kNoiseTag).seed();
}

ScenarioSpec scenario_preset(const std::string& name) {
    ScenarioSpec s;
    s.name = name;
    if (name == "pw-2slice-150") {
        s.letters = "AB";
        s.delta_z = 150e-6;
        s.illuminations = {IlluminationKind::plane};
    } else if (name == "pw-2slice-100") {
        s.letters = "AB";
        s.delta_z = 100e-6;
        s.illuminations = {IlluminationKind::plane};
    } else if (name == "speckle-2slice-30" || name == "speckle-2slice-20" ||
               name == "speckle-2slice-10") {
        s.letters = "AB";
        s.delta_z = name == "speckle-2slice-30" ? 30e-6
                    : name == "speckle-2slice-20" ? 20e-6
                                                  : 10e-6;
        s.illuminations = {IlluminationKind::speckle};
        s.target_bwr = 0.6;
    } else if (name == "speckle-3slice-L1") {
        s.letters = "ABC";
        s.delta_z = 30e-6;
        s.illuminations = {IlluminationKind::speckle};
        s.target_bwr = 0.6;
    } else if (name == "speckle-4slice-L1") {
        s.letters = "ABCD";
        s.delta_z = 30e-6;
        s.illuminations = {IlluminationKind::speckle};
        s.target_bwr = 0.6;
    } else if (name == "speckle-4slice-L2") {
        s.letters = "ABCD";
        s.delta_z = 30e-6;
        s.illuminations = {IlluminationKind::speckle, IlluminationKind::speckle};
        s.target_bwr = 0.6;
    } else {
        throw std::invalid_argument("unknown scenario preset '" + name + "'");
    }
    s.solver.n_slices = static_cast<int>(s.letters.size());
    s.solver.n_medium = s.n_medium;
    return s;
}

std::vector<std::string> preset_names() {
    return {"pw-2slice-150",     "pw-2slice-100",     "speckle-2slice-30",
            "speckle-2slice-20", "speckle-2slice-10", "speckle-3slice-L1",
            "speckle-4slice-L1", "speckle-4slice-L2"};
}

KeyValues scenario_to_kv(const ScenarioSpec& spec) {
    KeyValues kv;
    kv.emplace_back("name", spec.name);
    kv.emplace_back("phantom", spec.letters);
    kv.emplace_back("delta_z_um", format_double(spec.delta_z * 1e6));
    kv.emplace_back("detector_gap_um", format_double(spec.detector_gap * 1e6));
    kv.emplace_back("grid", std::to_string(spec.grid_n));
    kv.emplace_back("pixel_um", format_double(spec.pixel * 1e6));
    kv.emplace_back("wavelength_nm", format_double(spec.wavelength * 1e9));
    kv.emplace_back("na", format_double(spec.na));
    kv.emplace_back("photons_per_pixel", spec.photons_per_pixel
                                             ? format_double(*spec.photons_per_pixel)
                                             : std::string("noiseless"));
    kv.emplace_back("illuminations", kind_list_string(spec.illuminations));
    kv.emplace_back("bwr", format_double(spec.target_bwr));
    kv.emplace_back("n_inside", format_double(spec.n_inside));
    kv.emplace_back("n_medium", format_double(spec.n_medium));
    kv.emplace_back("outer_iterations", std::to_string(spec.solver.outer_iterations));
    kv.emplace_back("tv_subiterations", std::to_string(spec.solver.tv_subiterations));
    kv.emplace_back("beta", format_double(spec.solver.beta));
    kv.emplace_back("beta_shrink", format_double(spec.solver.beta_shrink));
    kv.emplace_back("tv_epsilon", format_double(spec.solver.tv_epsilon));
    kv.emplace_back("armijo_c", format_double(spec.solver.armijo_c));
    kv.emplace_back("ls_shrink", format_double(spec.solver.ls_shrink));
    kv.emplace_back("ls_max", std::to_string(spec.solver.ls_max));
    kv.emplace_back("clamp_to_medium", spec.solver.clamp_to_medium ? "true" : "false");
    kv.emplace_back("master_seed", std::to_string(spec.master_seed));
    return kv;
}

ScenarioSpec scenario_from_kv(const KeyValues& kv) {
    ScenarioSpec s;
    for (const auto& [key, value] : kv) {
        if (key == "name") s.name = value;
        else if (key == "phantom") s.letters = value;
        else if (key == "delta_z_um") s.delta_z = std::stod(value) * 1e-6;
        else if (key == "detector_gap_um") s.detector_gap = std::stod(value) * 1e-6;
        else if (key == "grid") s.grid_n = std::stoi(value);
        else if (key == "pixel_um") s.pixel = std::stod(value) * 1e-6;
        else if (key == "wavelength_nm") s.wavelength = std::stod(value) * 1e-9;
        else if (key == "na") s.na = std::stod(value);
        else if (key == "photons_per_pixel") {
            if (value == "noiseless")
                s.photons_per_pixel.reset();
            else
                s.photons_per_pixel = std::stod(value);
        } else if (key == "illuminations") s.illuminations = parse_kind_list(value);
        else if (key == "bwr") s.target_bwr = std::stod(value);
        else if (key == "n_inside") s.n_inside = std::stod(value);
        else if (key == "n_medium") s.n_medium = std::stod(value);
        else if (key == "outer_iterations") s.solver.outer_iterations = std::stoi(value);
        else if (key == "tv_subiterations") s.solver.tv_subiterations = std::stoi(value);
        else if (key == "beta") s.solver.beta = std::stod(value);
        else if (key == "beta_shrink") s.solver.beta_shrink = std::stod(value);
        else if (key == "tv_epsilon") s.solver.tv_epsilon = std::stod(value);
        else if (key == "armijo_c") s.solver.armijo_c = std::stod(value);
        else if (key == "ls_shrink") s.solver.ls_shrink = std::stod(value);
        else if (key == "ls_max") s.solver.ls_max = std::stoi(value);
        else if (key == "clamp_to_medium") s.solver.clamp_to_medium = (value == "true");
        else if (key == "master_seed") s.master_seed = std::stoull(value);
        else throw std::invalid_argument("scenario: unknown key '" + key + "'");
    }
    s.solver.n_slices = static_cast<int>(s.letters.size());
    s.solver.n_medium = s.n_medium;
    return s;
}

RIVolume scenario_phantom(const ScenarioSpec& spec) {
    return phantom_letters(spec.letters, spec.grid(), spec.delta_z, spec.detector_gap,
                           spec.n_inside, spec.n_medium);
}

IlluminationSet scenario_illuminations(const ScenarioSpec& spec) {
    const PropagationContext ctx = spec.context();
    IlluminationSet set;
    for (std::size_t l = 0; l < spec.illuminations.size(); ++l) {
        IlluminationMeta meta;
        meta.kind = spec.illuminations[l];
        if (meta.kind == IlluminationKind::plane) {
            set.fields.push_back(plane_wave(spec.grid()));
            meta.achieved_bwr = 0.0;
        } else {
            IlluminationSpec ispec;
            ispec.kind = IlluminationKind::speckle;
            ispec.target_bwr = spec.target_bwr;
            ispec.seed = spec.illumination_seed(l);
            ispec.grid = spec.grid();
            SpeckleField sf = speckle_illumination(ispec, ctx, spec.na);
            meta.seed = ispec.seed;
            meta.target_bwr = spec.target_bwr;
            meta.achieved_bwr = sf.achieved_bwr;
            set.fields.push_back(std::move(sf.field));
        }
        set.meta.push_back(meta);
    }
    return set;
}

DetectorModel scenario_detector(const ScenarioSpec& spec) {
    DetectorModel det;
    det.na = spec.na;
    det.photons_per_pixel = spec.photons_per_pixel;
    det.noise_seed = spec.noise_seed();
    return det;
}

ScenarioResult run_scenario_in_memory(const ScenarioSpec& spec) {
    spec.validate();
    const PropagationContext ctx = spec.context();

    ScenarioResult result;
    result.ground_truth = scenario_phantom(spec);
    const IlluminationSet illums = scenario_illuminations(spec);
    const DetectorModel detector = scenario_detector(spec);
    const MeasurementSet meas = acquire(result.ground_truth, illums, ctx, detector);

    SolverConfig cfg = spec.solver;
    cfg.n_slices = result.ground_truth.n_slices;
    cfg.n_medium = spec.n_medium;

    const auto t0 = std::chrono::steady_clock::now();
    result.state = solve(meas, illums, ctx, cfg, &result.ground_truth);
    const auto t1 = std::chrono::steady_clock::now();

    result.report = evaluate(result.state.estimate, result.ground_truth);
    result.report.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, const std::filesystem::path& out_dir,
                            bool force) {
    spec.validate();
    if (std::filesystem::exists(out_dir) && !force)
        throw std::runtime_error("output directory " + out_dir.string() +
                                 " already exists (use force to overwrite)");
    std::filesystem::create_directories(out_dir);

    const PropagationContext ctx = spec.context();
    ScenarioResult result;
    result.ground_truth = scenario_phantom(spec);
    const IlluminationSet illums = scenario_illuminations(spec);
    const DetectorModel detector = scenario_detector(spec);
    const MeasurementSet meas = acquire(result.ground_truth, illums, ctx, detector);

    write_key_values(out_dir / "scenario.txt", scenario_to_kv(spec));
    write_volume(out_dir / "ground_truth.asitvol", result.ground_truth, spec.wavelength);

    KeyValues manifest;
    manifest.emplace_back("count", std::to_string(meas.count()));
    manifest.emplace_back("delta_z_um", format_double(meas.delta_z * 1e6));
    manifest.emplace_back("detector_gap_um", format_double(meas.detector_gap * 1e6));
    manifest.emplace_back("wavelength_nm", format_double(meas.wavelength * 1e9));
    manifest.emplace_back("na", format_double(detector.na));
    manifest.emplace_back("photons_per_pixel", detector.photons_per_pixel
                                                   ? format_double(*detector.photons_per_pixel)
                                                   : std::string("noiseless"));
    manifest.emplace_back("noise_seed", std::to_string(detector.noise_seed));
    for (std::size_t l = 0; l < meas.count(); ++l) {
        const std::string illum_name = indexed_name("illum", l, ".asitfld");
        const std::string meas_name = indexed_name("meas", l, ".asitfld");
        write_field(out_dir / illum_name, illums.fields[l], spec.wavelength);
        write_field(out_dir / meas_name, meas.fields[l], spec.wavelength);

        const IlluminationMeta& m = illums.meta[l];
        KeyValues sidecar;
        sidecar.emplace_back("kind",
                             m.kind == IlluminationKind::plane ? "plane" : "speckle");
        sidecar.emplace_back("seed", std::to_string(m.seed));
        sidecar.emplace_back("target_bwr", format_double(m.target_bwr));
        sidecar.emplace_back("achieved_bwr", format_double(m.achieved_bwr));
        write_key_values(out_dir / indexed_name("illum", l, ".txt"), sidecar);

        manifest.emplace_back(indexed_name("illumination", l, ""), illum_name);
        manifest.emplace_back(indexed_name("measurement", l, ""), meas_name);
        manifest.emplace_back(indexed_name("achieved_bwr", l, ""),
                              format_double(m.achieved_bwr));
    }
    write_key_values(out_dir / "measurements.txt", manifest);

    SolverConfig cfg = spec.solver;
    cfg.n_slices = result.ground_truth.n_slices;
    cfg.n_medium = spec.n_medium;

    const auto t0 = std::chrono::steady_clock::now();
    result.state = solve(meas, illums, ctx, cfg, &result.ground_truth);
    const auto t1 = std::chrono::steady_clock::now();

    result.report = evaluate(result.state.estimate, result.ground_truth);
    result.report.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();

    write_volume(out_dir / "recon.asitvol", result.state.estimate, spec.wavelength);
    write_iteration_log(out_dir / "iterations.csv", result.state.log);

    // report.csv / report.txt (runtime deliberately omitted: artifact trees
    // must be byte-identical across reruns)
    std::string csv = "metric,slice,value\n";
    csv += "e_percent_global,," + format_double(result.report.e_percent_global) + "\n";
    csv += "e_percent_contrast,," + format_double(result.report.e_percent_contrast) + "\n";
    for (std::size_t j = 0; j < result.report.e_percent_per_slice.size(); ++j) {
        csv += "e_percent_slice," + std::to_string(j) + "," +
               format_double(result.report.e_percent_per_slice[j]) + "\n";
        csv += "crosstalk_index," + std::to_string(j) + "," +
               format_double(result.report.crosstalk_index_per_slice[j]) + "\n";
    }
    atomic_write(out_dir / "report.csv", csv);

    std::string txt = "scenario " + spec.name + " (master seed " +
                      std::to_string(spec.master_seed) + ")\n";
    txt += "E% (full RI)   : " + format_double(result.report.e_percent_global) + "\n";
    txt += "E% (contrast)  : " + format_double(result.report.e_percent_contrast) + "\n";
    for (std::size_t j = 0; j < result.report.e_percent_per_slice.size(); ++j)
        txt += "slice " + std::to_string(j) + ": E% " +
               format_double(result.report.e_percent_per_slice[j]) + ", crosstalk " +
               format_double(result.report.crosstalk_index_per_slice[j]) + "\n";
    atomic_write(out_dir / "report.txt", txt);

    const auto images = out_dir / "images";
    for (int j = 0; j < result.ground_truth.n_slices; ++j) {
        const auto gt = result.ground_truth.slice(j);
        const auto rc = result.state.estimate.slice(j);
        write_pgm16(images / slice_image_name("gt", j),
                    std::vector<double>(gt.begin(), gt.end()), spec.grid_n, spec.grid_n,
                    spec.n_medium, spec.n_inside);
        write_pgm16(images / slice_image_name("recon", j),
                    std::vector<double>(rc.begin(), rc.end()), spec.grid_n, spec.grid_n,
                    spec.n_medium, spec.n_inside);
    }
    return result;
}

std::vector<SweepCell> sweep(const ScenarioSpec& base, const std::vector<double>& delta_z_list,
                             const std::vector<double>& bwr_list,
                             const std::vector<int>& slice_count_list,
                             const std::vector<int>& illumination_count_list,
                             const std::filesystem::path& out_dir, bool force) {
    if (std::filesystem::exists(out_dir) && !force)
        throw std::runtime_error("output directory " + out_dir.string() +
                                 " already exists (use force to overwrite)");
    std::filesystem::create_directories(out_dir);

    const std::string alphabet = "ABCD";
    std::vector<SweepCell> cells;
    for (double dz : delta_z_list)
        for (double bwr : bwr_list)
            for (int ns : slice_count_list)
                for (int nl : illumination_count_list) {
                    if (ns < 1 || ns > 4)
                        throw std::invalid_argument("sweep: slice counts must be 1..4");
                    if (nl < 1) throw std::invalid_argument("sweep: need at least 1 illumination");

                    ScenarioSpec spec = base;
                    spec.delta_z = dz;
                    spec.letters = alphabet.substr(0, static_cast<std::size_t>(ns));
                    spec.target_bwr = bwr;
                    spec.illuminations.assign(
                        static_cast<std::size_t>(nl),
                        bwr > 0.0 ? IlluminationKind::speckle : IlluminationKind::plane);
                    spec.solver.n_slices = ns;

                    char cell_name[128];
                    std::snprintf(cell_name, sizeof(cell_name), "dz%.6gum_bwr%.4g_n%d_L%d",
                                  dz * 1e6, bwr, ns, nl);
                    spec.name = base.name + "-" + cell_name;

                    SweepCell cell;
                    cell.delta_z = dz;
                    cell.bwr = bwr;
                    cell.n_slices = ns;
                    cell.n_illuminations = nl;
                    cell.master_seed = spec.master_seed;
                    try {
                        const ScenarioResult r = run_scenario(spec, out_dir / cell_name, force);
                        cell.e_percent = r.report.e_percent_global;
                        cell.e_percent_contrast = r.report.e_percent_contrast;
                        cell.status = "ok";
                    } catch (const std::exception& e) {
                        cell.status = e.what();
                    }
                    cells.push_back(cell);
                }

    std::string csv = "delta_z_um,bwr,n_slices,L,master_seed,e_percent,e_percent_contrast,status\n";
    for (const SweepCell& c : cells) {
        csv += format_double(c.delta_z * 1e6) + "," + format_double(c.bwr) + "," +
               std::to_string(c.n_slices) + "," + std::to_string(c.n_illuminations) + "," +
               std::to_string(c.master_seed) + ",";
        if (c.status == "ok")
            csv += format_double(c.e_percent) + "," + format_double(c.e_percent_contrast);
        else
            csv += "nan,nan";
        csv += ",\"" + c.status + "\"\n";
    }
    atomic_write(out_dir / "sweep.csv", csv);
    return cells;
}

}  // namespace asit
