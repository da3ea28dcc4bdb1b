#ifndef SSCOPE_CALIBRATION_HPP
#define SSCOPE_CALIBRATION_HPP

#include "sscope/grid.hpp"
#include "sscope/patterns.hpp"
#include "sscope/response.hpp"
#include "sscope/shapelets.hpp"

#include <optional>
#include <vector>

namespace sscope {

/// Rotation-optimized response magnitude sampled over a range of kernel
/// scales on a uniform prototype pattern.
struct ScaleCurve {
    ShapeletIndex shapelet;
    double lambda = 0.0;
    std::vector<std::pair<double, double>> samples;  // (beta, response), beta increasing
};

/// Dimensionless scale coefficient: the response-maximizing beta = C*lambda.
struct ScaleCoefficient {
    ShapeletIndex shapelet;
    double C = 0.0;
};

struct BetaRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

/// Response magnitudes published alongside the method; C for beta = C*lambda,
/// indexed by m = 1..6 at n = 0.
const std::vector<ScaleCoefficient>& published_scale_coefficients();

/// Result of one calibration run, with the deviation from the published
/// coefficient for reporting.
struct CalibrationEntry {
    ScaleCoefficient coefficient;
    double deviation_from_published = 0.0;
    bool flagged = false;  // |deviation| > 0.05
};

/// Scale curve measured on a pattern image: for each beta the kernel is
/// rendered, correlated with the image (periodic boundary), and the
/// rotation-optimized magnitude is taken at the probe pixel where the
/// response is maximal over the central pattern period.
ScaleCurve scale_response_curve(const GrayImage& pattern, ShapeletIndex index,
                                double lambda, const BetaRange& range);

/// Scale curve against the prototype's analytic continuation: the kernel is
/// correlated with the pattern over the infinite pixel lattice (exact for a
/// cosine-sum pattern via the kernel's discrete-time Fourier transform at the
/// pattern wavevectors), and the response is the maximum of |w| over a unit
/// cell of probe locations. Kernels may exceed any finite prototype frame.
ScaleCurve scale_response_curve_analytic(const PatternSpec& prototype, ShapeletIndex index,
                                         const BetaRange& range,
                                         std::optional<std::pair<double, double>> probe = {});

/// Coarse grid search (step 0.02*lambda over 0.5*lambda..4*lambda, or the
/// given range scaled by lambda) plus golden-section refinement to
/// 1e-3*lambda of the analytic scale curve, averaged over lambda_set. Stripe
/// prototype for m <= 2, hexagonal above. Throws when the maximum is not
/// interior to the grid, or for indices outside n = 0, m in [1,6].
CalibrationEntry calibrate_scale(ShapeletIndex index, const std::vector<double>& lambda_set,
                                 std::optional<BetaRange> range_per_unit_lambda = {});

} // namespace sscope

#endif
