#include "doctest.h"
#include "oracles.hpp"

#include "sscope/shapelets.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace sscope;

namespace {

constexpr double pi = std::numbers::pi;

std::complex<double> grid_inner_product(const ComplexGrid& a, const ComplexGrid& b) {
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < a.values().size(); ++i)
        acc += a.values()[i] * std::conj(b.values()[i]);
    return acc;
}

double bilinear(const GrayImage& img, double x, double y) {
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    return img(x0, y0) * (1 - fx) * (1 - fy) + img(x0 + 1, y0) * fx * (1 - fy) +
           img(x0, y0 + 1) * (1 - fx) * fy + img(x0 + 1, y0 + 1) * fx * fy;
}

} // namespace

TEST_CASE("associated Laguerre: closed forms and frozen oracle value") {
    CHECK(eval_assoc_laguerre(0, 5, 7.3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_assoc_laguerre(1, 2, 3.0) == doctest::Approx(0.0).epsilon(1e-14));
    // L_2^0(1) from the expansion oracle: 1 - 2x + x^2/2 at x = 1.
    CHECK(oracles::laguerre_expansion(2, 0, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(eval_assoc_laguerre(2, 0, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("associated Laguerre: recurrence agrees with the expansion oracle") {
    for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 6; ++m) {
            for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 25.0}) {
                const double expected = oracles::laguerre_expansion(n, m, x);
                const double got = eval_assoc_laguerre(n, m, x);
                CHECK(got == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("radial profile values") {
    CHECK(chi_radial_unnorm({0, 3}, 0.0) == 0.0);
    CHECK(chi_radial_unnorm({0, 0}, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    // 1^2 * L_0^2(1) * e^{-1/2}, cross-checked against the Laguerre oracle.
    const double expected = 1.0 * oracles::laguerre_expansion(0, 2, 1.0) * std::exp(-0.5);
    CHECK(chi_radial_unnorm({0, 2}, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(chi_radial_unnorm({0, 2}, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("render_kernel: m = 0 kernel is purely real with unit norm") {
    const ShapeletKernel k = render_kernel({0, 0}, 8.0, 40.0);
    CHECK(k.values.width() == 81);
    double norm_sq = 0.0;
    for (const auto& v : k.values.values()) {
        CHECK(v.imag() == 0.0);
        norm_sq += std::norm(v);
    }
    CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("render_kernel: zero mean for m >= 1") {
    for (int m : {1, 2, 3, 4, 5, 6}) {
        const ShapeletKernel k = render_kernel({0, m}, 8.0, 40.0);
        std::complex<double> sum{0.0, 0.0};
        for (const auto& v : k.values.values()) sum += v;
        CHECK(std::abs(sum.real()) < 1e-9);
        CHECK(std::abs(sum.imag()) < 1e-9);
    }
}

TEST_CASE("render_kernel: unit L2 norm across indices and scales") {
    for (int m : {0, 1, 3, 6}) {
        for (double beta : {4.0, 8.0, 32.0, 100.0}) {
            const ShapeletKernel k = render_kernel({0, m}, beta);
            double norm_sq = 0.0;
            for (const auto& v : k.values.values()) norm_sq += std::norm(v);
            CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // n > 0 renders as well
    const ShapeletKernel k = render_kernel({2, 3}, 24.0);
    double norm_sq = 0.0;
    for (const auto& v : k.values.values()) norm_sq += std::norm(v);
    CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("render_kernel: imaginary part is the real part rotated by -pi/(2m)") {
    for (int m : {1, 2, 4}) {
        const double beta = 48.0;  // radial scale ~7.6 px keeps resampling error small
        const ShapeletKernel k = render_kernel({0, m}, beta);
        const int half = k.half_side();
        // A quarter angular period. Sampling the real part at points whose
        // polar angle is advanced by pi/(2m) reproduces the imaginary part;
        // stated as a rotation of the figure by -pi/(2m) when the rotation
        // moves features rather than coordinates.
        const double angle = pi / (2.0 * m);
        const double c = std::cos(angle);
        const double s = std::sin(angle);

        GrayImage real_part(k.values.width(), k.values.height());
        GrayImage imag_part(k.values.width(), k.values.height());
        for (int y = 0; y < k.values.height(); ++y) {
            for (int x = 0; x < k.values.width(); ++x) {
                real_part(x, y) = k.values(x, y).real();
                imag_part(x, y) = k.values(x, y).imag();
            }
        }
        // Clockwise rotation in image coordinates; sample the real part at the
        // pre-image of each pixel and compare with the imaginary part.
        double max_err = 0.0;
        double max_abs = 0.0;
        for (int y = -half / 2; y <= half / 2; ++y) {
            for (int x = -half / 2; x <= half / 2; ++x) {
                const double sx = c * x - s * y;
                const double sy = s * x + c * y;
                const double rotated = bilinear(real_part, sx + half, sy + half);
                max_err = std::max(max_err, std::abs(rotated - imag_part(x + half, y + half)));
                max_abs = std::max(max_abs, std::abs(imag_part(x + half, y + half)));
            }
        }
        CHECK(max_err < 0.02 * max_abs);
    }
}

TEST_CASE("render_kernel: distinct angular orders are orthogonal") {
    const ShapeletKernel k1 = render_kernel({0, 1}, 8.0, 40.0);
    const ShapeletKernel k2 = render_kernel({0, 2}, 8.0, 40.0);
    CHECK(std::abs(grid_inner_product(k1.values, k2.values)) < 1e-3);

    // Fine-grid quadrature of the continuum functions as the oracle.
    const auto continuum = oracles::quadrature_inner_product({0, 1}, {0, 2}, 8.0, 40.0);
    CHECK(std::abs(continuum) < 1e-3);

    // A pair whose angular difference is a multiple of 4 has no lattice
    // symmetry forcing exact cancellation; discretization still keeps it small
    // at a comfortable radial scale.
    const ShapeletKernel k5 = render_kernel({0, 5}, 48.0);
    const ShapeletKernel k1b = render_kernel({0, 1}, 48.0, k5.support_radius);
    CHECK(std::abs(grid_inner_product(k1b.values, k5.values)) < 1e-3);
}

TEST_CASE("render_kernel: rejects invalid configuration") {
    CHECK_THROWS_AS(render_kernel({0, 1}, 0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(render_kernel({0, 1}, -4.0, 10.0), std::invalid_argument);
    // support below 3x the radial scale
    CHECK_THROWS_AS(render_kernel({0, 1}, 8.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(render_kernel({-1, 1}, 8.0, 40.0), std::invalid_argument);
}

TEST_CASE("steer_kernel: exact endpoints of the steering identity") {
    const ShapeletKernel k = render_kernel({0, 3}, 16.0);
    const GrayImage at_zero = steer_kernel(k, 0.0);
    const GrayImage at_quarter = steer_kernel(k, pi / (2.0 * 3));
    const GrayImage at_half = steer_kernel(k, pi / 3.0);
    for (int y = 0; y < k.values.height(); ++y) {
        for (int x = 0; x < k.values.width(); ++x) {
            CHECK(at_zero(x, y) == k.values(x, y).real());
            CHECK(at_quarter(x, y) == doctest::Approx(k.values(x, y).imag()).epsilon(1e-15));
            CHECK(at_half(x, y) == doctest::Approx(-k.values(x, y).real()).epsilon(1e-15));
        }
    }
}

TEST_CASE("steer_kernel: periodic in 2*pi/m") {
    for (int m : {1, 2, 5}) {
        const ShapeletKernel k = render_kernel({0, m}, 12.0);
        for (double phi : {0.3, 1.7, 4.0}) {
            const GrayImage a = steer_kernel(k, phi);
            const GrayImage b = steer_kernel(k, phi + 2.0 * pi / m);
            for (size_t i = 0; i < a.values().size(); ++i)
                CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("steerability: steered combination equals the analytically rotated kernel") {
    for (int m = 1; m <= 6; ++m) {
        for (double beta : {4.0, 8.0}) {
            const double support = default_support_radius(beta);
            const ShapeletKernel k = render_kernel({0, m}, beta, support);
            for (int i = 0; i < 8; ++i) {
                const double phi = 2.0 * pi * i / 8.0 + 0.137;
                const ComplexGrid rotated = oracles::render_rotated({0, m}, beta, support, phi);
                const GrayImage steered = steer_kernel(k, phi);
                double max_err = 0.0;
                for (size_t j = 0; j < steered.values().size(); ++j)
                    max_err = std::max(max_err,
                                       std::abs(steered.values()[j] - rotated.values()[j].real()));
                CHECK(max_err < 1e-10);
            }
        }
    }
}
