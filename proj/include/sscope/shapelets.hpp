#ifndef SSCOPE_SHAPELETS_HPP
#define SSCOPE_SHAPELETS_HPP

#include "sscope/grid.hpp"

namespace sscope {

/// Shapelet index pair: n is the radial order, m the angular order.
/// Analysis restricts itself to n = 0, m = 1..6; the kernel math below
/// accepts any nonnegative pair.
struct ShapeletIndex {
    int n = 0;
    int m = 0;

    bool operator==(const ShapeletIndex&) const = default;
};

/// Discretized complex polar shapelet on a square pixel grid.
///
/// The kernel samples chi(2*pi*r/beta) * exp(-i*m*theta) at pixel centers,
/// theta = atan2(y, x) in image coordinates (y down), and is rescaled to unit
/// discrete L2 norm over the complex grid. With this scaling, beta is
/// commensurate with the pattern wavelength it is calibrated against
/// (beta = C*lambda); the Gaussian envelope has effective radius
/// radial_scale() = beta/(2*pi) in pixels.
struct ShapeletKernel {
    ShapeletIndex index;
    double beta = 0.0;           // characteristic scale, pixels
    double support_radius = 0.0; // truncation radius, pixels
    ComplexGrid values;          // odd-sided, centered on the kernel origin

    int half_side() const { return (values.width() - 1) / 2; }
};

/// Effective Gaussian radius of a kernel at scale beta.
double radial_scale(double beta);

/// Default truncation radius: 5x the effective Gaussian radius, where the
/// envelope has fallen below e^-12.5.
double default_support_radius(double beta);

/// Associated Laguerre polynomial L_n^m(x) via the stable three-term
/// upward recurrence in n.
double eval_assoc_laguerre(int n, int m, double x);

/// Unnormalized radial profile r^m * L_n^m(r^2) * exp(-r^2/2).
double chi_radial_unnorm(ShapeletIndex index, double r);

/// Renders the discretized kernel on a (2*ceil(support_radius)+1)^2 grid.
/// Throws std::invalid_argument for beta <= 0 or support_radius below
/// 3x the effective Gaussian radius.
ShapeletKernel render_kernel(ShapeletIndex index, double beta, double support_radius);
ShapeletKernel render_kernel(ShapeletIndex index, double beta);

/// Real part of the kernel rotated clockwise by phi:
/// cos(m*phi)*Re[kernel] + sin(m*phi)*Im[kernel].
GrayImage steer_kernel(const ShapeletKernel& kernel, double phi);

} // namespace sscope

#endif
