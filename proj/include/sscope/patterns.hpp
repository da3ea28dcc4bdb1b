#ifndef SSCOPE_PATTERNS_HPP
#define SSCOPE_PATTERNS_HPP

#include "sscope/grid.hpp"

#include <array>
#include <utility>
#include <vector>

namespace sscope {

enum class PatternKind { stripe, hexagonal };

/// One-mode prototype pattern: a cosine sum over the pattern's basis
/// wavevectors, each of magnitude 2*pi/lambda.
struct PatternSpec {
    PatternKind kind = PatternKind::stripe;
    double lambda = 16.0;      // wavelength, pixels (>= 4)
    double orientation = 0.0;  // radians
    double amplitude = 1.0;    // a_n, nonzero
    double offset = 0.0;
    int width = 256;
    int height = 256;
};

/// Basis wavevectors after rotating the pattern by spec.orientation:
/// one vector for stripes, three for the hexagonal lattice.
std::vector<std::array<double, 2>> pattern_wavevectors(const PatternSpec& spec);

/// Analytic pattern value at real-valued coordinates (pixel units, origin at
/// pixel (0,0)). Defined on the whole plane, not just the image frame.
double pattern_value(const PatternSpec& spec, double x, double y);

/// Samples the pattern at pixel centers. Rejects invalid specs.
GrayImage uniform_pattern(const PatternSpec& spec);

/// Multi-grain field: each region is filled from its own pattern, blended
/// linearly over a band straddling region interfaces so the field stays
/// continuous. All specs must share kind and lambda; the region masks must
/// partition the image.
struct GrainFieldSpec {
    struct Grain {
        MaskGrid region;
        PatternSpec pattern;
    };
    std::vector<Grain> grains;
    double boundary_band_width = 0.0;  // full band width, pixels; 0 -> lambda/2
};

struct GrainField {
    GrayImage image;
    MaskGrid boundary_mask;  // pixels within boundary_band_width/2 of an interface
};

GrainField multi_grain_pattern(const GrainFieldSpec& spec);

/// Exact Euclidean distance (pixels) from every pixel to the nearest set
/// pixel of the mask. Pixels of the mask itself get 0; returns +inf-like
/// large values when the mask is empty.
GrayImage distance_to_mask(const MaskGrid& mask);

} // namespace sscope

#endif
