#include "sscope/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sscope {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void validate(const PatternSpec& spec) {
    if (spec.lambda < 4.0)
        throw std::invalid_argument("PatternSpec: lambda must be at least 4 pixels");
    if (spec.amplitude == 0.0)
        throw std::invalid_argument("PatternSpec: amplitude must be nonzero");
    if (spec.width <= 0 || spec.height <= 0)
        throw std::invalid_argument("PatternSpec: dimensions must be positive");
}

// Squared-distance lower envelope along one dimension
// (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double d = q - v[k];
        out[q] = d * d + f[v[k]];
    }
}

} // namespace

std::vector<std::array<double, 2>> pattern_wavevectors(const PatternSpec& spec) {
    const double k = two_pi / spec.lambda;
    std::vector<std::array<double, 2>> base;
    if (spec.kind == PatternKind::stripe) {
        base = {{0.0, k}};
    } else {
        const double h = std::sqrt(3.0) / 2.0;
        base = {{0.0, k}, {h * k, -0.5 * k}, {-h * k, -0.5 * k}};
    }
    const double c = std::cos(spec.orientation);
    const double s = std::sin(spec.orientation);
    for (auto& kv : base) {
        const double kx = kv[0];
        const double ky = kv[1];
        kv = {c * kx - s * ky, s * kx + c * ky};
    }
    return base;
}

double pattern_value(const PatternSpec& spec, double x, double y) {
    double sum = 0.0;
    for (const auto& k : pattern_wavevectors(spec))
        sum += std::cos(k[0] * x + k[1] * y);
    return spec.offset + spec.amplitude * sum;
}

GrayImage uniform_pattern(const PatternSpec& spec) {
    validate(spec);
    GrayImage image(spec.width, spec.height);
    const auto ks = pattern_wavevectors(spec);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            double sum = 0.0;
            for (const auto& k : ks) sum += std::cos(k[0] * x + k[1] * y);
            image(x, y) = spec.offset + spec.amplitude * sum;
        }
    }
    return image;
}

GrayImage distance_to_mask(const MaskGrid& mask) {
    const int w = mask.width();
    const int h = mask.height();
    const double inf = 1e18;

    GrayImage dist_sq(w, h);
    std::vector<double> col(h), col_out(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[y] = mask(x, y) ? 0.0 : inf;
        edt_1d(col, col_out);
        for (int y = 0; y < h; ++y) dist_sq(x, y) = col_out[y];
    }
    std::vector<double> row(w), row_out(w);
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) row[x] = dist_sq(x, y);
        edt_1d(row, row_out);
        for (int x = 0; x < w; ++x) out(x, y) = std::sqrt(row_out[x]);
    }
    return out;
}

GrainField multi_grain_pattern(const GrainFieldSpec& spec) {
    if (spec.grains.empty())
        throw std::invalid_argument("multi_grain_pattern: no grains");

    const int w = spec.grains.front().region.width();
    const int h = spec.grains.front().region.height();
    for (const auto& g : spec.grains) {
        validate(g.pattern);
        if (g.region.width() != w || g.region.height() != h)
            throw std::invalid_argument("multi_grain_pattern: region mask size mismatch");
        if (g.pattern.kind != spec.grains.front().pattern.kind ||
            g.pattern.lambda != spec.grains.front().pattern.lambda)
            throw std::invalid_argument("multi_grain_pattern: grains must share kind and lambda");
    }

    // Region masks must partition the image.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int owners = 0;
            for (const auto& g : spec.grains) owners += g.region(x, y) ? 1 : 0;
            if (owners != 1)
                throw std::invalid_argument(
                    owners == 0 ? "multi_grain_pattern: masks do not cover the image"
                                : "multi_grain_pattern: overlapping region masks");
        }
    }

    const double band =
        spec.boundary_band_width > 0.0 ? spec.boundary_band_width
                                       : spec.grains.front().pattern.lambda / 2.0;

    GrainField field{GrayImage(w, h), MaskGrid(w, h, 0)};
    if (spec.grains.size() == 1) {
        field.image = uniform_pattern(spec.grains.front().pattern);
        return field;
    }

    // Signed depth per grain: positive inside the region, negative outside,
    // measured to the nearest pixel of the opposite side.
    const size_t g_count = spec.grains.size();
    std::vector<GrayImage> depth;
    depth.reserve(g_count);
    for (const auto& g : spec.grains) {
        MaskGrid complement(w, h, 0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) complement(x, y) = g.region(x, y) ? 0 : 1;
        GrayImage inside = distance_to_mask(complement);  // depth inside region
        GrayImage outside = distance_to_mask(g.region);   // distance when outside
        GrayImage signed_depth(w, h);
        for (size_t i = 0; i < signed_depth.values().size(); ++i)
            signed_depth.values()[i] = inside.values()[i] - outside.values()[i];
        depth.push_back(std::move(signed_depth));
    }

    std::vector<double> weights(g_count);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double total = 0.0;
            for (size_t g = 0; g < g_count; ++g) {
                const double wgt =
                    std::clamp((depth[g](x, y) + band / 2.0) / band, 0.0, 1.0);
                weights[g] = wgt;
                total += wgt;
            }
            double value = 0.0;
            for (size_t g = 0; g < g_count; ++g) {
                if (weights[g] == 0.0) continue;
                value += weights[g] / total *
                         pattern_value(spec.grains[g].pattern, x, y);
            }
            field.image(x, y) = value;

            // The owner's depth is the distance to the nearest pixel of any
            // other region; the interface itself sits between pixel centers.
            double to_other = 0.0;
            for (size_t g = 0; g < g_count; ++g)
                if (spec.grains[g].region(x, y)) to_other = depth[g](x, y);
            field.boundary_mask(x, y) = (to_other <= band / 2.0 + 0.5) ? 1 : 0;
        }
    }
    return field;
}

} // namespace sscope
