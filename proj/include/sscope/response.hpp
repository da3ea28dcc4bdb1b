#ifndef SSCOPE_RESPONSE_HPP
#define SSCOPE_RESPONSE_HPP

#include "sscope/grid.hpp"
#include "sscope/shapelets.hpp"

#include <utility>
#include <vector>

namespace sscope {

enum class Boundary { periodic, zero_pad };

/// Per-pixel complex correlation of the image with a translated kernel:
/// values(x,y) = sum_{x',y'} f(x',y') * B(x'-x, y'-y).
struct ComplexResponseField {
    ShapeletIndex shapelet;
    double beta = 0.0;
    ComplexGrid values;
};

/// Rotation-optimized response: magnitude |w| and the orientation
/// arg(w)/m reduced to [0, 2*pi/m) at which the steered real response
/// is maximal.
struct OrientedResponseField {
    ShapeletIndex shapelet;
    double beta = 0.0;
    GrayImage magnitude;
    GrayImage orientation;
};

/// Per-pixel unit vector of the p rotation-optimized magnitudes, or the zero
/// vector where every filter response vanishes.
struct ResponseVectorField {
    int p = 0;
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, p components per pixel

    const double* at(int x, int y) const {
        return values.data() + (static_cast<size_t>(y) * width + x) * p;
    }
    double* at(int x, int y) {
        return values.data() + (static_cast<size_t>(y) * width + x) * p;
    }
};

/// Defect-free reference pixels and their cached response vectors.
struct ReferenceSet {
    std::vector<std::pair<int, int>> pixels;
    std::vector<std::vector<double>> vectors;  // deduplicated
};

/// Response distance to the nearest reference vector, raw and min-max
/// normalized to [0,1].
struct DistanceField {
    GrayImage raw;
    GrayImage normalized;
};

/// Frequency-domain correlation. The kernel grid must fit inside the image.
ComplexResponseField correlate(const GrayImage& image, const ShapeletKernel& kernel,
                               Boundary boundary);

OrientedResponseField optimal_orientation(const ComplexResponseField& field);

/// Renders each shapelet at beta = C*lambda, correlates, and stacks the
/// per-pixel magnitudes into unit vectors.
ResponseVectorField response_vector_field(
    const GrayImage& image, const std::vector<std::pair<ShapeletIndex, double>>& shapelet_set,
    double lambda, Boundary boundary);

/// Same computation, also returning the per-shapelet magnitude/orientation
/// fields and the count of degenerate (all-zero) pixels.
struct ResponseStack {
    std::vector<OrientedResponseField> fields;
    ResponseVectorField vectors;
    long degenerate_pixel_count = 0;
};
ResponseStack compute_response_stack(
    const GrayImage& image, const std::vector<std::pair<ShapeletIndex, double>>& shapelet_set,
    double lambda, Boundary boundary);

ReferenceSet make_reference_set(const ResponseVectorField& field,
                                const std::vector<std::pair<int, int>>& pixels);
ReferenceSet reference_set_from_rect(const ResponseVectorField& field, int x, int y,
                                     int w, int h);
ReferenceSet reference_set_from_mask(const ResponseVectorField& field, const MaskGrid& mask);

DistanceField response_distance_map(const ResponseVectorField& field, const ReferenceSet& ref);

} // namespace sscope

#endif
