#include "sscope/pipeline.hpp"

#include "sscope/calibration.hpp"
#include "sscope/errors.hpp"
#include "sscope/image_io.hpp"
#include "sscope/patterns.hpp"
#include "sscope/spectral.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sscope {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir + ": cannot create output directory");
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open config file");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": invalid JSON (" + e.what() + ")");
    }
    return j;
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "zero" || s == "zero_pad") return Boundary::zero_pad;
    throw std::invalid_argument("unknown boundary mode '" + s + "' (periodic|zero)");
}

std::string boundary_to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "zero";
}

PatternKind kind_from_string(const std::string& s) {
    if (s == "stripe") return PatternKind::stripe;
    if (s == "hexagonal" || s == "hex") return PatternKind::hexagonal;
    throw std::invalid_argument("unknown pattern kind '" + s + "' (stripe|hexagonal)");
}

std::string image_name(const std::string& stem, const std::string& format) {
    return stem + "." + format;
}

// Calibration CSV: header m,n,C,lambda_set,deviation_from_published.
std::vector<std::pair<ShapeletIndex, double>> load_coefficients_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open calibration file");
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty calibration file");
    std::vector<std::pair<ShapeletIndex, double>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        ShapeletIndex index;
        double c = 0.0;
        if (!std::getline(row, cell, ',')) continue;
        index.m = std::stoi(cell);
        if (!std::getline(row, cell, ',')) throw IoError(path + ": malformed calibration row");
        index.n = std::stoi(cell);
        if (!std::getline(row, cell, ',')) throw IoError(path + ": malformed calibration row");
        c = std::stod(cell);
        out.emplace_back(index, c);
    }
    if (out.empty()) throw IoError(path + ": calibration file has no rows");
    return out;
}

struct ResolvedCoefficients {
    std::vector<std::pair<ShapeletIndex, double>> set;  // (index, C) for requested shapelets
    std::string source;
};

ResolvedCoefficients resolve_coefficients(const std::vector<ShapeletIndex>& shapelets,
                                          const std::string& source_spec) {
    ResolvedCoefficients resolved;
    std::vector<std::pair<ShapeletIndex, double>> table;
    if (source_spec == "table") {
        for (const auto& c : published_scale_coefficients())
            table.emplace_back(c.shapelet, c.C);
        resolved.source = "builtin-table";
    } else if (source_spec == "auto") {
        if (fs::exists("calibration.csv")) {
            table = load_coefficients_csv("calibration.csv");
            resolved.source = "calibration-file:calibration.csv";
        } else {
            for (const auto& c : published_scale_coefficients())
                table.emplace_back(c.shapelet, c.C);
            resolved.source = "builtin-table";
        }
    } else {
        table = load_coefficients_csv(source_spec);
        resolved.source = "calibration-file:" + source_spec;
    }

    for (const ShapeletIndex& index : shapelets) {
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const auto& e) { return e.first == index; });
        if (it == table.end())
            throw std::invalid_argument("no scale coefficient available for shapelet (m=" +
                                        std::to_string(index.m) +
                                        ", n=" + std::to_string(index.n) + ")");
        resolved.set.emplace_back(index, it->second);
    }
    return resolved;
}

std::vector<ShapeletIndex> default_shapelets() {
    std::vector<ShapeletIndex> set;
    for (int m = 1; m <= 6; ++m) set.push_back({0, m});
    return set;
}

} // namespace

AnalysisConfig load_analysis_config(const std::string& json_path) {
    const ordered_json j = read_json_file(json_path);
    AnalysisConfig config;
    if (j.contains("input")) config.input = j.at("input").get<std::string>();
    if (j.contains("out")) config.out_dir = j.at("out").get<std::string>();
    if (j.contains("lambda") && !j.at("lambda").is_null())
        config.lambda_override = j.at("lambda").get<double>();
    if (j.contains("shapelets")) {
        for (const auto& s : j.at("shapelets"))
            config.shapelets.push_back({s.at("n").get<int>(), s.at("m").get<int>()});
    }
    if (j.contains("coefficients"))
        config.coefficients_source = j.at("coefficients").get<std::string>();
    if (j.contains("boundary"))
        config.boundary = boundary_from_string(j.at("boundary").get<std::string>());
    if (j.contains("ref_rect")) {
        const auto& r = j.at("ref_rect");
        if (!r.is_array() || r.size() != 4)
            throw std::invalid_argument(json_path + ": ref_rect must be [x,y,w,h]");
        config.ref_rect = {{r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<int>()}};
    }
    if (j.contains("ref_mask")) config.ref_mask_path = j.at("ref_mask").get<std::string>();
    if (j.contains("prominence")) config.prominence = j.at("prominence").get<double>();
    if (j.contains("dump_csv")) config.dump_csv = j.at("dump_csv").get<bool>();
    if (j.contains("format")) config.image_format = j.at("format").get<std::string>();
    return config;
}

int cmd_generate(const GenerateOptions& opts) {
    const ordered_json j = read_json_file(opts.config_path);
    ensure_out_dir(opts.out_dir);

    PatternSpec base;
    base.kind = kind_from_string(j.value("kind", std::string("stripe")));
    base.lambda = j.value("lambda", 16.0);
    base.orientation = j.value("orientation_deg", 0.0) * std::numbers::pi / 180.0;
    base.amplitude = j.value("amplitude", 1.0);
    base.offset = j.value("offset", 0.0);
    base.width = j.value("width", 256);
    base.height = j.value("height", 256);

    if (!j.contains("grains")) {
        const GrayImage pattern = uniform_pattern(base);
        save_field(pattern, join(opts.out_dir, image_name("pattern", opts.image_format)),
                   SaveMode::normalized_image);
        return 0;
    }

    GrainFieldSpec field_spec;
    field_spec.boundary_band_width = j.value("boundary_band_width", 0.0);
    for (const auto& g : j.at("grains")) {
        GrainFieldSpec::Grain grain;
        grain.pattern = base;
        if (g.contains("orientation_deg"))
            grain.pattern.orientation = g.at("orientation_deg").get<double>() *
                                        std::numbers::pi / 180.0;
        if (g.contains("amplitude")) grain.pattern.amplitude = g.at("amplitude").get<double>();
        if (g.contains("offset")) grain.pattern.offset = g.at("offset").get<double>();

        if (g.contains("rect")) {
            const auto& r = g.at("rect");
            grain.region = MaskGrid(base.width, base.height, 0);
            const int x0 = r[0].get<int>();
            const int y0 = r[1].get<int>();
            const int w = r[2].get<int>();
            const int h = r[3].get<int>();
            for (int y = std::max(0, y0); y < std::min(base.height, y0 + h); ++y)
                for (int x = std::max(0, x0); x < std::min(base.width, x0 + w); ++x)
                    grain.region(x, y) = 1;
        } else if (g.contains("mask")) {
            grain.region = load_mask(g.at("mask").get<std::string>());
        } else {
            throw std::invalid_argument(opts.config_path +
                                        ": each grain needs a 'rect' or 'mask'");
        }
        field_spec.grains.push_back(std::move(grain));
    }

    const GrainField field = multi_grain_pattern(field_spec);
    save_field(field.image, join(opts.out_dir, image_name("pattern", opts.image_format)),
               SaveMode::normalized_image);
    save_mask(field.boundary_mask,
              join(opts.out_dir, image_name("boundary_mask", opts.image_format)));
    return 0;
}

int cmd_spectrum(const SpectrumOptions& opts) {
    const GrayImage image = load_image(opts.input);
    ensure_out_dir(opts.out_dir);

    const SpectralDensity sd = spectral_density(image);
    save_field(sd.values, join(opts.out_dir, image_name("spectral_density", opts.image_format)),
               SaveMode::normalized_image);

    const RadialProfile profile = radial_average(sd);
    const std::string csv_path = join(opts.out_dir, "radial_profile.csv");
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError(csv_path + ": cannot open file for writing");
    out << "wavenumber,power\n";
    for (const auto& e : profile.entries)
        out << format_double(e.wavenumber) << ',' << format_double(e.mean_power) << '\n';
    return 0;
}

int cmd_calibrate(const CalibrateOptions& opts) {
    ensure_out_dir(opts.out_dir);
    const std::string csv_path = join(opts.out_dir, "calibration.csv");
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError(csv_path + ": cannot open file for writing");
    out << "m,n,C,lambda_set,deviation_from_published\n";

    std::string lambda_list;
    for (size_t i = 0; i < opts.lambdas.size(); ++i)
        lambda_list += (i ? ";" : "") + format_double(opts.lambdas[i]);

    for (const int m : opts.orders) {
        const CalibrationEntry entry = calibrate_scale({0, m}, opts.lambdas);
        out << m << ",0," << format_double(entry.coefficient.C) << ',' << lambda_list << ','
            << format_double(entry.deviation_from_published);
        if (entry.flagged) out << ",flagged";
        out << '\n';

        if (opts.write_curves) {
            PatternSpec prototype;
            prototype.kind = m <= 2 ? PatternKind::stripe : PatternKind::hexagonal;
            prototype.lambda = opts.lambdas.front();
            const BetaRange range{0.5 * prototype.lambda, 4.0 * prototype.lambda,
                                  0.02 * prototype.lambda};
            const ScaleCurve curve = scale_response_curve_analytic(prototype, {0, m}, range);
            const std::string curve_path =
                join(opts.out_dir, "scale_curve_m" + std::to_string(m) + ".csv");
            std::ofstream curve_out(curve_path, std::ios::binary);
            if (!curve_out) throw IoError(curve_path + ": cannot open file for writing");
            curve_out << "beta,response\n";
            for (const auto& [beta, response] : curve.samples)
                curve_out << format_double(beta) << ',' << format_double(response) << '\n';
        }
    }
    return 0;
}

int cmd_analyze(const AnalysisConfig& input_config) {
    AnalysisConfig config = input_config;
    if (config.shapelets.empty()) config.shapelets = default_shapelets();
    if (config.input.empty()) throw std::invalid_argument("analyze: no input image given");
    if (!config.ref_rect && config.ref_mask_path.empty())
        throw std::invalid_argument(
            "analyze: a reference region is required (--ref-rect or --ref-mask)");

    const GrayImage image = load_image(config.input);
    ensure_out_dir(config.out_dir);

    WavelengthOptions wl_opts;
    wl_opts.prominence = config.prominence;
    const double lambda =
        config.lambda_override ? *config.lambda_override : detect_wavelength(image, wl_opts);

    const ResolvedCoefficients coeffs =
        resolve_coefficients(config.shapelets, config.coefficients_source);

    const ResponseStack stack =
        compute_response_stack(image, coeffs.set, lambda, config.boundary);

    const ReferenceSet ref =
        config.ref_rect
            ? reference_set_from_rect(stack.vectors, (*config.ref_rect)[0],
                                      (*config.ref_rect)[1], (*config.ref_rect)[2],
                                      (*config.ref_rect)[3])
            : reference_set_from_mask(stack.vectors, load_mask(config.ref_mask_path));

    const DistanceField distance = response_distance_map(stack.vectors, ref);

    const std::string& format = config.image_format;
    save_field(distance.normalized,
               join(config.out_dir, image_name("distance_map", format)),
               SaveMode::normalized_image);
    save_field(distance.raw, join(config.out_dir, "distance_raw.csv"), SaveMode::raw_csv);

    for (size_t i = 0; i < stack.fields.size(); ++i) {
        const auto& field = stack.fields[i];
        const std::string tag = "m" + std::to_string(field.shapelet.m);
        save_field(field.magnitude,
                   join(config.out_dir, image_name("magnitude_" + tag, format)),
                   SaveMode::normalized_image);
        // Orientation images use the fixed period [0, 2*pi/m) -> full scale.
        const double period = 2.0 * std::numbers::pi / std::max(1, field.shapelet.m);
        save_fixed_range_image(field.orientation, 0.0, period,
                               join(config.out_dir, image_name("orientation_" + tag, format)));
        if (config.dump_csv) {
            save_field(field.magnitude, join(config.out_dir, "magnitude_" + tag + ".csv"),
                       SaveMode::raw_csv);
            save_field(field.orientation, join(config.out_dir, "orientation_" + tag + ".csv"),
                       SaveMode::raw_csv);
        }
    }
    if (config.dump_csv)
        save_vector_field_csv(stack.vectors, join(config.out_dir, "response_vectors.csv"));

    ordered_json summary;
    summary["lambda_px"] = lambda;
    summary["p"] = static_cast<int>(coeffs.set.size());
    summary["shapelets"] = ordered_json::array();
    for (const auto& [index, c] : coeffs.set) {
        ordered_json s;
        s["m"] = index.m;
        s["n"] = index.n;
        s["C"] = c;
        s["beta_px"] = c * lambda;
        summary["shapelets"].push_back(s);
    }
    summary["degenerate_pixel_count"] = stack.degenerate_pixel_count;
    summary["boundary_mode"] = boundary_to_string(config.boundary);
    summary["source_of_C"] = coeffs.source;

    ordered_json resolved;
    resolved["input"] = config.input;
    resolved["out"] = config.out_dir;
    resolved["lambda"] =
        config.lambda_override ? ordered_json(*config.lambda_override) : ordered_json(nullptr);
    resolved["shapelets"] = ordered_json::array();
    for (const auto& s : config.shapelets)
        resolved["shapelets"].push_back({{"m", s.m}, {"n", s.n}});
    resolved["coefficients"] = config.coefficients_source;
    resolved["boundary"] = boundary_to_string(config.boundary);
    if (config.ref_rect)
        resolved["ref_rect"] = {(*config.ref_rect)[0], (*config.ref_rect)[1],
                                (*config.ref_rect)[2], (*config.ref_rect)[3]};
    if (!config.ref_mask_path.empty()) resolved["ref_mask"] = config.ref_mask_path;
    resolved["prominence"] = config.prominence;
    resolved["dump_csv"] = config.dump_csv;
    resolved["format"] = config.image_format;
    summary["config"] = resolved;

    const std::string summary_path = join(config.out_dir, "summary.json");
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw IoError(summary_path + ": cannot open file for writing");
    out << summary.dump(2) << '\n';
    return 0;
}

} // namespace sscope
