#include "sscope/shapelets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sscope {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double radial_scale(double beta) {
    return beta / two_pi;
}

double default_support_radius(double beta) {
    return 5.0 * radial_scale(beta);
}

double eval_assoc_laguerre(int n, int m, double x) {
    if (n < 0 || m < 0)
        throw std::invalid_argument("eval_assoc_laguerre: indices must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;            // L_0^m
    double cur = 1.0 + m - x;     // L_1^m
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0 + m - x) * cur - (k - 1.0 + m) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

double chi_radial_unnorm(ShapeletIndex index, double r) {
    if (index.n < 0 || index.m < 0)
        throw std::invalid_argument("chi_radial_unnorm: indices must be nonnegative");
    if (r < 0.0)
        throw std::invalid_argument("chi_radial_unnorm: r must be nonnegative");
    const double r2 = r * r;
    return std::pow(r, index.m) * eval_assoc_laguerre(index.n, index.m, r2) * std::exp(-0.5 * r2);
}

ShapeletKernel render_kernel(ShapeletIndex index, double beta, double support_radius) {
    if (index.n < 0 || index.m < 0)
        throw std::invalid_argument("render_kernel: indices must be nonnegative");
    if (beta <= 0.0)
        throw std::invalid_argument("render_kernel: beta must be positive");
    const double sigma = radial_scale(beta);
    if (support_radius < 3.0 * sigma)
        throw std::invalid_argument("render_kernel: support_radius below 3x the radial scale");

    const int half = static_cast<int>(std::ceil(support_radius));
    const int side = 2 * half + 1;
    ShapeletKernel kernel{index, beta, support_radius, ComplexGrid(side, side)};

    double norm_sq = 0.0;
    for (int y = -half; y <= half; ++y) {
        for (int x = -half; x <= half; ++x) {
            const double r = std::hypot(static_cast<double>(x), static_cast<double>(y));
            std::complex<double> v{0.0, 0.0};
            if (r <= support_radius) {
                const double radial = chi_radial_unnorm(index, r / sigma) / beta;
                const double angle = -index.m * std::atan2(static_cast<double>(y),
                                                           static_cast<double>(x));
                v = radial * std::complex<double>(std::cos(angle), std::sin(angle));
            }
            kernel.values(x + half, y + half) = v;
            norm_sq += std::norm(v);
        }
    }
    // The continuum kernel integrates to zero for m >= 1; truncation leaves a
    // small discrete residue (worst for m = 0 mod 4, where no lattice symmetry
    // cancels it). Subtracting the complex mean over the support disk restores
    // exact zero response to constant images, and since the mean of B*e^{-im*phi}
    // is e^{-im*phi} times the mean of B, the correction commutes with rotation
    // and steering stays exact.
    if (index.m >= 1) {
        std::complex<double> mean{0.0, 0.0};
        long in_disk = 0;
        for (int y = -half; y <= half; ++y)
            for (int x = -half; x <= half; ++x)
                if (std::hypot(static_cast<double>(x), static_cast<double>(y)) <=
                    support_radius) {
                    mean += kernel.values(x + half, y + half);
                    ++in_disk;
                }
        mean /= static_cast<double>(in_disk);
        norm_sq = 0.0;
        for (int y = -half; y <= half; ++y)
            for (int x = -half; x <= half; ++x)
                if (std::hypot(static_cast<double>(x), static_cast<double>(y)) <=
                    support_radius) {
                    auto& v = kernel.values(x + half, y + half);
                    v -= mean;
                    norm_sq += std::norm(v);
                }
    }
    if (norm_sq <= 0.0)
        throw std::invalid_argument("render_kernel: degenerate kernel (zero norm)");

    // Unit discrete L2 norm; absorbs the c_{n,m} constant. The factor is a
    // function of rotation-invariant quantities only, so steering against an
    // independently rendered rotated kernel stays exact.
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto& v : kernel.values.values()) v *= inv_norm;
    return kernel;
}

ShapeletKernel render_kernel(ShapeletIndex index, double beta) {
    return render_kernel(index, beta, default_support_radius(beta));
}

GrayImage steer_kernel(const ShapeletKernel& kernel, double phi) {
    const double c = std::cos(kernel.index.m * phi);
    const double s = std::sin(kernel.index.m * phi);
    GrayImage out(kernel.values.width(), kernel.values.height());
    const auto& src = kernel.values.values();
    auto& dst = out.values();
    for (size_t i = 0; i < src.size(); ++i)
        dst[i] = c * src[i].real() + s * src[i].imag();
    return out;
}

} // namespace sscope
