#ifndef SSCOPE_PIPELINE_HPP
#define SSCOPE_PIPELINE_HPP

#include "sscope/response.hpp"
#include "sscope/shapelets.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sscope {

/// Fully resolved configuration for the `analyze` subcommand. Defaults
/// materialize here; the JSON summary echoes the resolved values.
struct AnalysisConfig {
    std::string input;
    std::string out_dir = ".";
    std::optional<double> lambda_override;
    std::vector<ShapeletIndex> shapelets;     // empty -> n=0, m=1..6
    std::string coefficients_source = "auto"; // "auto" | "table" | path to calibration CSV
    Boundary boundary = Boundary::periodic;
    std::optional<std::array<int, 4>> ref_rect;  // x,y,w,h
    std::string ref_mask_path;
    double prominence = 10.0;
    bool dump_csv = false;
    std::string image_format = "pgm";  // "pgm" | "png"
};

/// Reads AnalysisConfig fields from a JSON document; missing fields keep
/// their defaults.
AnalysisConfig load_analysis_config(const std::string& json_path);

struct GenerateOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string image_format = "pgm";
};

struct SpectrumOptions {
    std::string input;
    std::string out_dir = ".";
    std::string image_format = "pgm";
};

struct CalibrateOptions {
    std::vector<double> lambdas = {16.0, 32.0, 48.0};
    std::vector<int> orders = {1, 2, 3, 4, 5, 6};
    std::string out_dir = ".";
    bool write_curves = false;
};

/// Subcommand entry points. Each returns 0 on success and throws on error;
/// the CLI translates exceptions into nonzero exit codes with diagnostics.
int cmd_generate(const GenerateOptions& opts);
int cmd_spectrum(const SpectrumOptions& opts);
int cmd_calibrate(const CalibrateOptions& opts);
int cmd_analyze(const AnalysisConfig& config);

} // namespace sscope

#endif
