// shapelet-scope: quantifies local translational order in grayscale images of
// self-assembled surface patterns via steerable polar shapelet filters.
//
//   generate   synthesize stripe/hexagonal prototypes and multi-grain fields
//   spectrum   spectral density and radially averaged profile of an image
//   calibrate  response-maximizing scale coefficients (beta = C*lambda)
//   analyze    wavelength detection, response vectors, defect distance map

#include "sscope/errors.hpp"
#include "sscope/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_lambda_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steerable shapelet analysis of surface self-assembly images"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "synthesize prototype patterns");
    sscope::GenerateOptions gen_opts;
    generate->add_option("--config", gen_opts.config_path, "pattern spec (JSON)")->required();
    generate->add_option("--out", gen_opts.out_dir, "output directory");
    generate->add_option("--format", gen_opts.image_format, "image format: pgm|png");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "spectral density and radial profile");
    sscope::SpectrumOptions spec_opts;
    spectrum->add_option("input", spec_opts.input, "grayscale PGM/PNG image")->required();
    spectrum->add_option("--out", spec_opts.out_dir, "output directory");
    spectrum->add_option("--format", spec_opts.image_format, "image format: pgm|png");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "scale coefficients beta = C*lambda");
    sscope::CalibrateOptions cal_opts;
    std::string lambda_csv = "16,32,48";
    calibrate->add_option("--lambdas", lambda_csv, "comma-separated wavelengths (px)");
    calibrate->add_option("--out", cal_opts.out_dir, "output directory");
    calibrate->add_flag("--curves", cal_opts.write_curves, "also write per-shapelet scale curves");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full defect-map analysis");
    std::string analyze_input;
    std::string config_path;
    std::string boundary;
    std::string ref_rect_csv;
    std::string ref_mask;
    std::string coefficients;
    std::string out_dir;
    std::string format;
    double lambda_override = 0.0;
    double prominence = 0.0;
    bool dump_csv = false;
    analyze->add_option("input", analyze_input, "grayscale PGM/PNG image");
    analyze->add_option("--config", config_path, "analysis config (JSON)");
    analyze->add_option("--lambda", lambda_override, "wavelength override (px)");
    analyze->add_option("--boundary", boundary, "periodic|zero");
    analyze->add_option("--ref-rect", ref_rect_csv, "reference rectangle x,y,w,h");
    analyze->add_option("--ref-mask", ref_mask, "reference mask image");
    analyze->add_option("--coeffs", coefficients, "table|auto|<calibration.csv>");
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--format", format, "image format: pgm|png");
    analyze->add_option("--prominence", prominence, "spectral peak prominence factor");
    analyze->add_flag("--dump-csv", dump_csv, "write raw CSV dumps of all fields");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return sscope::cmd_generate(gen_opts);
        if (spectrum->parsed()) return sscope::cmd_spectrum(spec_opts);
        if (calibrate->parsed()) {
            cal_opts.lambdas = parse_lambda_list(lambda_csv);
            return sscope::cmd_calibrate(cal_opts);
        }

        sscope::AnalysisConfig config;
        if (!config_path.empty()) config = sscope::load_analysis_config(config_path);
        if (!analyze_input.empty()) config.input = analyze_input;
        if (lambda_override > 0.0) config.lambda_override = lambda_override;
        if (!boundary.empty())
            config.boundary = boundary == "zero" ? sscope::Boundary::zero_pad
                                                 : sscope::Boundary::periodic;
        if (!ref_rect_csv.empty()) {
            std::array<int, 4> rect{};
            std::istringstream in(ref_rect_csv);
            std::string cell;
            for (int i = 0; i < 4; ++i) {
                if (!std::getline(in, cell, ','))
                    throw std::invalid_argument("--ref-rect expects x,y,w,h");
                rect[i] = std::stoi(cell);
            }
            config.ref_rect = rect;
        }
        if (!ref_mask.empty()) config.ref_mask_path = ref_mask;
        if (!coefficients.empty()) config.coefficients_source = coefficients;
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.image_format = format;
        if (prominence > 0.0) config.prominence = prominence;
        if (dump_csv) config.dump_csv = true;
        return sscope::cmd_analyze(config);
    } catch (const sscope::NoDominantPeakError& e) {
        std::fprintf(stderr, "shapelet-scope: no dominant spectral peak: %s\n", e.what());
        std::fprintf(stderr, "hint: pass --lambda <px> to override wavelength detection\n");
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "shapelet-scope: %s\n", e.what());
        return 1;
    }
}
