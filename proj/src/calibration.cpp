#include "sscope/calibration.hpp"

#include "sscope/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sscope {

namespace {

constexpr double golden_ratio_inv = 0.6180339887498949;

struct ProbeGrid {
    int extent_x = 0;
    int extent_y = 0;
};

// Correlation of a rendered kernel with the analytic cosine-sum pattern over
// the infinite pixel lattice. Writing the pattern as
//   offset + (a/2) * sum_j (e^{i k_j.x} + e^{-i k_j.x}),
// the response at probe x0 is
//   w(x0) = offset * sum(B) + (a/2) * sum_j [ e^{i k_j.x0} D(k_j)
//                                           + (-1)^m e^{-i k_j.x0} D(k_j) ]
// with D(k) = sum_s B(s) e^{i k.s}; D(-k) = (-1)^m D(k) because the kernel's
// radial part is even and e^{-i m theta} flips sign with parity m under
// point reflection.
class AnalyticResponse {
public:
    AnalyticResponse(const PatternSpec& prototype, ShapeletIndex index, double support_radius)
        : prototype_(prototype), index_(index), support_radius_(support_radius),
          wavevectors_(pattern_wavevectors(prototype)) {}

    double probe_max(double beta, const ProbeGrid& grid) const {
        const auto terms = dtft_terms(beta);
        double best = 0.0;
        for (int y = 0; y < grid.extent_y; ++y)
            for (int x = 0; x < grid.extent_x; ++x)
                best = std::max(best, std::abs(response_at(terms, x, y)));
        return best;
    }

    double at_probe(double beta, double x, double y) const {
        return std::abs(response_at(dtft_terms(beta), x, y));
    }

private:
    struct Terms {
        std::vector<std::complex<double>> dtft;  // D(k_j)
        std::complex<double> kernel_sum;
    };

    Terms dtft_terms(double beta) const {
        const ShapeletKernel kernel = render_kernel(index_, beta, support_radius_);
        const int half = kernel.half_side();
        const int side = kernel.values.width();

        Terms terms;
        terms.dtft.resize(wavevectors_.size());
        for (size_t j = 0; j < wavevectors_.size(); ++j) {
            const auto [kx, ky] = std::pair{wavevectors_[j][0], wavevectors_[j][1]};
            std::vector<std::complex<double>> phase_x(side), phase_y(side);
            for (int i = 0; i < side; ++i) {
                phase_x[i] = std::polar(1.0, kx * (i - half));
                phase_y[i] = std::polar(1.0, ky * (i - half));
            }
            std::complex<double> acc{0.0, 0.0};
            for (int y = 0; y < side; ++y) {
                std::complex<double> row{0.0, 0.0};
                for (int x = 0; x < side; ++x) row += kernel.values(x, y) * phase_x[x];
                acc += row * phase_y[y];
            }
            terms.dtft[j] = acc;
        }
        terms.kernel_sum = {0.0, 0.0};
        for (const auto& v : kernel.values.values()) terms.kernel_sum += v;
        return terms;
    }

    std::complex<double> response_at(const Terms& terms, double x, double y) const {
        const double parity = (index_.m % 2 == 0) ? 1.0 : -1.0;
        std::complex<double> w = prototype_.offset * terms.kernel_sum;
        for (size_t j = 0; j < wavevectors_.size(); ++j) {
            const double phase = wavevectors_[j][0] * x + wavevectors_[j][1] * y;
            const std::complex<double> e = std::polar(1.0, phase);
            w += 0.5 * prototype_.amplitude *
                 (e * terms.dtft[j] + parity * std::conj(e) * terms.dtft[j]);
        }
        return w;
    }

    PatternSpec prototype_;
    ShapeletIndex index_;
    double support_radius_;
    std::vector<std::array<double, 2>> wavevectors_;
};

PatternSpec calibration_prototype(int m, double lambda) {
    PatternSpec spec;
    spec.kind = (m <= 2) ? PatternKind::stripe : PatternKind::hexagonal;
    spec.lambda = lambda;
    spec.orientation = 0.0;
    spec.amplitude = 1.0;
    spec.offset = 0.0;
    spec.width = 256;
    spec.height = 256;
    return spec;
}

ProbeGrid probe_grid_for(double lambda) {
    // Two wavelengths cover a full unit cell of either prototype.
    const int extent = static_cast<int>(std::ceil(2.0 * lambda)) + 1;
    return {extent, extent};
}

std::vector<double> beta_samples(const BetaRange& range) {
    if (!(range.lo > 0.0) || !(range.hi > range.lo) || !(range.step > 0.0))
        throw std::invalid_argument("scale curve: degenerate beta range");
    std::vector<double> betas;
    for (double b = range.lo; b <= range.hi + 1e-12 * range.hi; b += range.step)
        betas.push_back(b);
    return betas;
}

} // namespace

const std::vector<ScaleCoefficient>& published_scale_coefficients() {
    static const std::vector<ScaleCoefficient> table = {
        {{0, 1}, 1.418}, {{0, 2}, 1.725}, {{0, 3}, 2.003},
        {{0, 4}, 2.224}, {{0, 5}, 2.439}, {{0, 6}, 2.640},
    };
    return table;
}

ScaleCurve scale_response_curve(const GrayImage& pattern, ShapeletIndex index,
                                double lambda, const BetaRange& range) {
    const auto betas = beta_samples(range);

    // Probe window: one pattern period around the image center.
    const int window = static_cast<int>(std::ceil(2.0 * lambda)) + 1;
    const int x0 = std::max(0, pattern.width() / 2 - window / 2);
    const int y0 = std::max(0, pattern.height() / 2 - window / 2);
    const int x1 = std::min(pattern.width(), x0 + window);
    const int y1 = std::min(pattern.height(), y0 + window);

    ScaleCurve curve{index, lambda, {}};
    curve.samples.resize(betas.size());
    parallel_for(0, static_cast<int>(betas.size()), [&](int i) {
        const ShapeletKernel kernel = render_kernel(index, betas[i]);
        const OrientedResponseField field =
            optimal_orientation(correlate(pattern, kernel, Boundary::periodic));
        double best = 0.0;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) best = std::max(best, field.magnitude(x, y));
        curve.samples[i] = {betas[i], best};
    });
    return curve;
}

ScaleCurve scale_response_curve_analytic(const PatternSpec& prototype, ShapeletIndex index,
                                         const BetaRange& range,
                                         std::optional<std::pair<double, double>> probe) {
    const auto betas = beta_samples(range);
    // A grid sized for the largest beta keeps the curve smooth across samples.
    const AnalyticResponse response(prototype, index, default_support_radius(range.hi));
    const ProbeGrid grid = probe_grid_for(prototype.lambda);

    ScaleCurve curve{index, prototype.lambda, {}};
    curve.samples.resize(betas.size());
    parallel_for(0, static_cast<int>(betas.size()), [&](int i) {
        const double value = probe ? response.at_probe(betas[i], probe->first, probe->second)
                                   : response.probe_max(betas[i], grid);
        curve.samples[i] = {betas[i], value};
    });
    return curve;
}

CalibrationEntry calibrate_scale(ShapeletIndex index, const std::vector<double>& lambda_set,
                                 std::optional<BetaRange> range_per_unit_lambda) {
    if (index.n != 0 || index.m < 1 || index.m > 6)
        throw std::invalid_argument("calibrate_scale: supported indices are n = 0, m in [1,6]");
    if (lambda_set.empty())
        throw std::invalid_argument("calibrate_scale: empty lambda set");

    const BetaRange unit =
        range_per_unit_lambda ? *range_per_unit_lambda : BetaRange{0.5, 4.0, 0.02};

    double c_sum = 0.0;
    for (const double lambda : lambda_set) {
        const PatternSpec prototype = calibration_prototype(index.m, lambda);
        const BetaRange range{unit.lo * lambda, unit.hi * lambda, unit.step * lambda};
        const ScaleCurve curve = scale_response_curve_analytic(prototype, index, range);

        size_t best = 0;
        for (size_t i = 1; i < curve.samples.size(); ++i)
            if (curve.samples[i].second > curve.samples[best].second) best = i;
        if (best == 0 || best + 1 == curve.samples.size())
            throw std::runtime_error(
                "calibrate_scale: response maximum not interior to the search range");

        // Golden-section refinement inside the bracketing coarse interval.
        const AnalyticResponse response(prototype, index, default_support_radius(range.hi));
        const ProbeGrid grid = probe_grid_for(lambda);
        double a = curve.samples[best - 1].first;
        double b = curve.samples[best + 1].first;
        double x1 = b - golden_ratio_inv * (b - a);
        double x2 = a + golden_ratio_inv * (b - a);
        double f1 = response.probe_max(x1, grid);
        double f2 = response.probe_max(x2, grid);
        while (b - a > 1e-3 * lambda) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden_ratio_inv * (b - a);
                f2 = response.probe_max(x2, grid);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden_ratio_inv * (b - a);
                f1 = response.probe_max(x1, grid);
            }
        }
        c_sum += 0.5 * (a + b) / lambda;
    }

    CalibrationEntry entry;
    entry.coefficient = {index, c_sum / static_cast<double>(lambda_set.size())};
    for (const auto& published : published_scale_coefficients()) {
        if (published.shapelet == index) {
            entry.deviation_from_published = entry.coefficient.C - published.C;
            entry.flagged = std::abs(entry.deviation_from_published) > 0.05;
        }
    }
    return entry;
}

} // namespace sscope
