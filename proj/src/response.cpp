#include "sscope/response.hpp"

#include "sscope/fft.hpp"
#include "sscope/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sscope {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Embeds the reflected kernel, B(dx,dy) -> position (-dx mod W, -dy mod H),
// so that ifft(fft(f) * fft(embedded)) is the cross-correlation
// sum_{x'} f(x') B(x'-x).
ComplexGrid embed_reflected(const ShapeletKernel& kernel, int w, int h) {
    ComplexGrid out(w, h, {0.0, 0.0});
    const int half = kernel.half_side();
    for (int dy = -half; dy <= half; ++dy) {
        const int y = ((-dy) % h + h) % h;
        for (int dx = -half; dx <= half; ++dx) {
            const int x = ((-dx) % w + w) % w;
            out(x, y) += kernel.values(dx + half, dy + half);
        }
    }
    return out;
}

} // namespace

ComplexResponseField correlate(const GrayImage& image, const ShapeletKernel& kernel,
                               Boundary boundary) {
    const int w = image.width();
    const int h = image.height();
    const int side = kernel.values.width();
    if (side > std::min(w, h))
        throw std::invalid_argument("correlate: kernel support exceeds the image");

    ComplexResponseField field{kernel.index, kernel.beta, ComplexGrid(w, h)};

    if (boundary == Boundary::periodic) {
        const ComplexGrid product_src = fft2(to_complex(image));
        const ComplexGrid kernel_hat = fft2(embed_reflected(kernel, w, h));
        ComplexGrid product(w, h);
        for (size_t i = 0; i < product.values().size(); ++i)
            product.values()[i] = product_src.values()[i] * kernel_hat.values()[i];
        field.values = ifft2(product);
        return field;
    }

    // Zero-padded: widen by the kernel half-side on each edge so no wrapped
    // contribution reaches the cropped region.
    const int half = kernel.half_side();
    const int pw = w + 2 * half;
    const int ph = h + 2 * half;
    ComplexGrid padded(pw, ph, {0.0, 0.0});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) padded(x, y) = image(x, y);

    const ComplexGrid image_hat = fft2(padded);
    const ComplexGrid kernel_hat = fft2(embed_reflected(kernel, pw, ph));
    ComplexGrid product(pw, ph);
    for (size_t i = 0; i < product.values().size(); ++i)
        product.values()[i] = image_hat.values()[i] * kernel_hat.values()[i];
    const ComplexGrid full = ifft2(product);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) field.values(x, y) = full(x, y);
    return field;
}

OrientedResponseField optimal_orientation(const ComplexResponseField& field) {
    const int w = field.values.width();
    const int h = field.values.height();
    const int m = field.shapelet.m;
    OrientedResponseField out{field.shapelet, field.beta, GrayImage(w, h), GrayImage(w, h)};

    const double period = (m > 0) ? two_pi / m : two_pi;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::complex<double> wv = field.values(x, y);
            out.magnitude(x, y) = std::abs(wv);
            if (wv == std::complex<double>{0.0, 0.0} || m == 0) {
                out.orientation(x, y) = 0.0;
                continue;
            }
            // Steered response is |w| cos(arg w - m*phi); the maximizer is
            // arg(w)/m up to multiples of 2*pi/m.
            double phi = std::arg(wv) / m;
            phi = std::fmod(phi, period);
            if (phi < 0.0) phi += period;
            out.orientation(x, y) = phi;
        }
    }
    return out;
}

ResponseStack compute_response_stack(
    const GrayImage& image, const std::vector<std::pair<ShapeletIndex, double>>& shapelet_set,
    double lambda, Boundary boundary) {
    if (shapelet_set.empty())
        throw std::invalid_argument("compute_response_stack: empty shapelet set");
    if (lambda <= 0.0)
        throw std::invalid_argument("compute_response_stack: lambda must be positive");
    if (image.width() < 16 || image.height() < 16)
        throw std::invalid_argument("compute_response_stack: image must be at least 16x16");

    ResponseStack stack;
    for (const auto& [index, coeff] : shapelet_set) {
        const double beta = coeff * lambda;
        const ShapeletKernel kernel = render_kernel(index, beta);
        stack.fields.push_back(optimal_orientation(correlate(image, kernel, boundary)));
    }

    const int w = image.width();
    const int h = image.height();
    const int p = static_cast<int>(shapelet_set.size());
    stack.vectors = ResponseVectorField{
        p, w, h, std::vector<double>(static_cast<size_t>(w) * h * p, 0.0)};

    // Degeneracy threshold proportional to the image amplitude: zero-mean
    // filters answer a constant image with pure roundoff, which must count
    // as "no response". Scaling with the amplitude keeps the classification
    // invariant under image rescaling.
    double image_scale = 0.0;
    for (double v : image.values()) image_scale = std::max(image_scale, std::abs(v));
    const double threshold_sq = 1e-18 * image_scale * image_scale;

    long degenerate = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double* v = stack.vectors.at(x, y);
            double norm_sq = 0.0;
            for (int i = 0; i < p; ++i) {
                v[i] = stack.fields[i].magnitude(x, y);
                norm_sq += v[i] * v[i];
            }
            if (norm_sq > threshold_sq) {
                const double inv = 1.0 / std::sqrt(norm_sq);
                for (int i = 0; i < p; ++i) v[i] *= inv;
            } else {
                // zero response genuinely means "no pattern here"
                for (int i = 0; i < p; ++i) v[i] = 0.0;
                ++degenerate;
            }
        }
    }
    stack.degenerate_pixel_count = degenerate;
    return stack;
}

ResponseVectorField response_vector_field(
    const GrayImage& image, const std::vector<std::pair<ShapeletIndex, double>>& shapelet_set,
    double lambda, Boundary boundary) {
    return compute_response_stack(image, shapelet_set, lambda, boundary).vectors;
}

ReferenceSet make_reference_set(const ResponseVectorField& field,
                                const std::vector<std::pair<int, int>>& pixels) {
    if (pixels.empty())
        throw std::invalid_argument("make_reference_set: empty reference set");
    ReferenceSet ref;
    ref.pixels = pixels;
    std::vector<std::vector<double>> vectors;
    vectors.reserve(pixels.size());
    for (const auto& [x, y] : pixels) {
        if (x < 0 || x >= field.width || y < 0 || y >= field.height)
            throw std::invalid_argument("make_reference_set: reference pixel out of bounds");
        const double* v = field.at(x, y);
        vectors.emplace_back(v, v + field.p);
    }
    // Identical vectors collapse; the minimum over the set is unchanged.
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
    ref.vectors = std::move(vectors);
    return ref;
}

ReferenceSet reference_set_from_rect(const ResponseVectorField& field, int x, int y,
                                     int w, int h) {
    if (w <= 0 || h <= 0 || x < 0 || y < 0 || x + w > field.width || y + h > field.height)
        throw std::invalid_argument("reference_set_from_rect: rectangle outside the image");
    std::vector<std::pair<int, int>> pixels;
    pixels.reserve(static_cast<size_t>(w) * h);
    for (int yy = y; yy < y + h; ++yy)
        for (int xx = x; xx < x + w; ++xx) pixels.emplace_back(xx, yy);
    return make_reference_set(field, pixels);
}

ReferenceSet reference_set_from_mask(const ResponseVectorField& field, const MaskGrid& mask) {
    if (mask.width() != field.width || mask.height() != field.height)
        throw std::invalid_argument("reference_set_from_mask: mask size mismatch");
    std::vector<std::pair<int, int>> pixels;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask(x, y)) pixels.emplace_back(x, y);
    return make_reference_set(field, pixels);
}

DistanceField response_distance_map(const ResponseVectorField& field, const ReferenceSet& ref) {
    if (ref.vectors.empty())
        throw std::invalid_argument("response_distance_map: empty reference set");
    const int w = field.width;
    const int h = field.height;
    const int p = field.p;

    const size_t n_ref = ref.vectors.size();
    std::vector<double> flat(n_ref * p);
    for (size_t j = 0; j < n_ref; ++j)
        for (int i = 0; i < p; ++i) flat[j * p + i] = ref.vectors[j][i];

    // Direct difference sums: the cancellation-prone |v|^2+|r|^2-2v.r form
    // would turn the self-distance of a reference pixel into sqrt(eps)
    // instead of an exact zero.
    DistanceField out{GrayImage(w, h), GrayImage(w, h)};
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const double* v = field.at(x, y);
            double best = std::numeric_limits<double>::max();
            for (size_t j = 0; j < n_ref; ++j) {
                const double* r = flat.data() + j * p;
                double d_sq = 0.0;
                for (int i = 0; i < p; ++i) {
                    const double diff = v[i] - r[i];
                    d_sq += diff * diff;
                }
                if (d_sq < best) best = d_sq;
            }
            out.raw(x, y) = std::sqrt(best);
        }
    });

    const auto [mn_it, mx_it] =
        std::minmax_element(out.raw.values().begin(), out.raw.values().end());
    const double mn = *mn_it;
    const double mx = *mx_it;
    // Degenerate min==max convention, with a floor at the distance
    // resolution of 16-bit quantized inputs (~1.5e-5 per unit amplitude):
    // stretching pure numeric noise to full contrast would paint a uniform
    // image as speckle.
    const double range = mx - mn;
    if (range > 1e-5) {
        for (size_t i = 0; i < out.raw.values().size(); ++i)
            out.normalized.values()[i] = (out.raw.values()[i] - mn) / range;
    }
    return out;
}

} // namespace sscope
