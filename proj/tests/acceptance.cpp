// Acceptance suite: exercises every headline requirement end to end and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include "oracles.hpp"

#include "sscope/calibration.hpp"
#include "sscope/errors.hpp"
#include "sscope/patterns.hpp"
#include "sscope/response.hpp"
#include "sscope/shapelets.hpp"
#include "sscope/spectral.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace sscope;

namespace {

constexpr double pi = std::numbers::pi;

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  %d. %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::vector<std::pair<ShapeletIndex, double>> published_set() {
    std::vector<std::pair<ShapeletIndex, double>> set;
    for (const auto& c : published_scale_coefficients()) set.emplace_back(c.shapelet, c.C);
    return set;
}

// ---------------------------------------------------------------- criterion 1

void criterion_table1() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> lambdas = {16.0, 32.0, 48.0};
    double worst = 0.0;
    int worst_m = 0;
    std::string values;
    for (int m = 1; m <= 6; ++m) {
        const CalibrationEntry entry = calibrate_scale({0, m}, lambdas);
        const double dev = std::abs(entry.deviation_from_published);
        if (dev > worst) {
            worst = dev;
            worst_m = m;
        }
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%sC%d=%.3f", m > 1 ? " " : "", m,
                      entry.coefficient.C);
        values += buf;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst <= 0.02 && seconds < 300.0;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "%s; worst |dC|=%.4f at m=%d, tolerance 0.02; %.1fs of 300s budget",
                  values.c_str(), worst, worst_m, seconds);
    report(1, "scale coefficients match the published table over three wavelengths", pass,
           detail);
}

// ---------------------------------------------------------------- criterion 2

void criterion_steerability() {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
        for (double beta : {4.0, 8.0}) {
            const double support = default_support_radius(beta);
            const ShapeletKernel kernel = render_kernel({0, m}, beta, support);
            for (int i = 0; i < 20; ++i) {
                const double phi = 2.0 * pi * (i + 0.382) / 20.0;
                const ComplexGrid rotated = oracles::render_rotated({0, m}, beta, support, phi);
                const GrayImage steered = steer_kernel(kernel, phi);
                for (size_t j = 0; j < steered.values().size(); ++j)
                    worst = std::max(worst, std::abs(steered.values()[j] -
                                                     rotated.values()[j].real()));
            }
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "max per-pixel |steered - rotated| = %.2e, tolerance 1e-10", worst);
    report(2, "steered combination equals the analytically rotated kernel", worst < 1e-10,
           detail);
}

// ---------------------------------------------------------------- criterion 3

void criterion_orientation_oracle() {
    double worst_w = 0.0;
    double worst_phi = 0.0;

    auto check_field = [&](const ComplexResponseField& field,
                           const std::vector<std::pair<int, int>>& pixels) {
        const OrientedResponseField oriented = optimal_orientation(field);
        const int m = field.shapelet.m;
        const double period = 2.0 * pi / m;
        for (const auto& [x, y] : pixels) {
            const auto scan = oracles::rotation_scan(field.values(x, y), m);
            worst_w = std::max(worst_w, std::abs(oriented.magnitude(x, y) - scan.w_star));
            double d = std::abs(oriented.orientation(x, y) - scan.phi_star);
            d = std::min(d, period - d);
            worst_phi = std::max(worst_phi, d);
        }
    };

    // pseudo-random complex fields
    oracles::SplitMix64 rng(0x0c3a11e5);
    for (int m = 1; m <= 6; ++m) {
        ComplexResponseField field{{0, m}, 8.0, ComplexGrid(500, 1)};
        std::vector<std::pair<int, int>> pixels;
        for (int i = 0; i < 500; ++i) {
            field.values(i, 0) = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            pixels.emplace_back(i, 0);
        }
        check_field(field, pixels);
    }

    // prototype-pattern response fields
    const int stripe_orders[] = {1, 2};
    const int hex_orders[] = {3, 6};
    for (const PatternKind kind : {PatternKind::stripe, PatternKind::hexagonal}) {
        PatternSpec spec;
        spec.kind = kind;
        spec.lambda = 16.0;
        spec.width = 256;
        spec.height = 256;
        const GrayImage image = uniform_pattern(spec);
        for (int m : kind == PatternKind::stripe ? stripe_orders : hex_orders) {
            const double beta = published_scale_coefficients()[m - 1].C * spec.lambda;
            const ComplexResponseField field =
                correlate(image, render_kernel({0, m}, beta), Boundary::periodic);
            std::vector<std::pair<int, int>> pixels;
            for (int i = 0; i < 200; ++i)
                pixels.emplace_back(static_cast<int>(rng.uniform(0, 256)),
                                    static_cast<int>(rng.uniform(0, 256)));
            check_field(field, pixels);
        }
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "max |w*-scan| = %.2e (tol 1e-6); max |phi*-scan| = %.2e rad (tol %.2e)",
                  worst_w, worst_phi, 2.0 * pi / 3600.0);
    report(3, "closed-form orientation matches the brute-force rotation scan",
           worst_w < 1e-6 && worst_phi < 2.0 * pi / 3600.0, detail);
}

// ---------------------------------------------------------------- criterion 4

void criterion_rotation_invariance() {
    const int side = 448;
    const double lambda = 32.0;
    const double interior_radius = 140.0;
    PatternSpec base;
    base.kind = PatternKind::hexagonal;
    base.lambda = lambda;
    base.width = side;
    base.height = side;
    const double cx = side / 2.0;
    const double cy = side / 2.0;

    const auto set = published_set();
    const auto wavevectors = pattern_wavevectors(base);

    // transform of each kernel at the pattern wavevectors: the unrotated
    // field then evaluates exactly at arbitrary coordinates
    std::vector<std::array<std::complex<double>, 3>> dtft(set.size());
    for (size_t f = 0; f < set.size(); ++f) {
        const ShapeletKernel kernel = render_kernel(set[f].first, set[f].second * lambda);
        const int half = kernel.half_side();
        for (size_t j = 0; j < wavevectors.size(); ++j) {
            std::complex<double> acc{0.0, 0.0};
            for (int ty = -half; ty <= half; ++ty)
                for (int tx = -half; tx <= half; ++tx)
                    acc += kernel.values(tx + half, ty + half) *
                           std::polar(1.0, wavevectors[j][0] * tx + wavevectors[j][1] * ty);
            dtft[f][j] = acc;
        }
    }
    auto analytic_magnitude = [&](size_t f, double sx, double sy) {
        const double parity = set[f].first.m % 2 == 0 ? 1.0 : -1.0;
        std::complex<double> w{0.0, 0.0};
        for (size_t j = 0; j < wavevectors.size(); ++j) {
            const std::complex<double> e =
                std::polar(1.0, wavevectors[j][0] * sx + wavevectors[j][1] * sy);
            w += 0.5 * (e * dtft[f][j] + parity * std::conj(e) * dtft[f][j]);
        }
        return std::abs(w);
    };

    double worst_component = 0.0;
    double worst_fraction = 1.0;
    double worst_p99 = 0.0;
    for (double degrees : {10.0, 33.0, 77.0}) {
        const double phi = degrees * pi / 180.0;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        GrayImage rotated(side, side);
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                const double dx = x - cx;
                const double dy = y - cy;
                rotated(x, y) =
                    pattern_value(base, c * dx + s * dy + cx, -s * dx + c * dy + cy);
            }

        const ResponseStack stack =
            compute_response_stack(rotated, set, lambda, Boundary::periodic);

        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                if (std::hypot(x - cx, y - cy) > interior_radius) continue;
                const double dx = x - cx;
                const double dy = y - cy;
                const double sx = c * dx + s * dy + cx;
                const double sy = -s * dx + c * dy + cy;
                double expected[6];
                double norm_sq = 0.0;
                for (size_t f = 0; f < 6; ++f) {
                    expected[f] = analytic_magnitude(f, sx, sy);
                    norm_sq += expected[f] * expected[f];
                }
                const double inv = 1.0 / std::sqrt(norm_sq);
                const double* v = stack.vectors.at(x, y);
                for (int f = 0; f < 6; ++f)
                    worst_component =
                        std::max(worst_component, std::abs(v[f] - expected[f] * inv));
            }
        }

        // distance map against a same-pattern reference patch, restricted to
        // a crop around the interior to keep the nearest-neighbor pass tight
        const int crop0 = side / 2 - 144;
        const int crop_side = 288;
        ResponseVectorField crop{6, crop_side, crop_side,
                                 std::vector<double>(static_cast<size_t>(crop_side) *
                                                     crop_side * 6)};
        for (int y = 0; y < crop_side; ++y)
            for (int x = 0; x < crop_side; ++x)
                for (int f = 0; f < 6; ++f)
                    crop.at(x, y)[f] = stack.vectors.at(x + crop0, y + crop0)[f];

        const ReferenceSet ref =
            reference_set_from_rect(crop, crop_side / 2 - 48, crop_side / 2 - 48, 96, 96);
        const DistanceField map = response_distance_map(crop, ref);

        std::vector<double> raws;
        for (int y = 0; y < crop_side; ++y)
            for (int x = 0; x < crop_side; ++x) {
                if (std::hypot(x + crop0 - cx, y + crop0 - cy) > interior_radius) continue;
                raws.push_back(map.raw(x, y));
            }
        long below = 0;
        for (double r : raws)
            if (r < 0.05) ++below;
        worst_fraction = std::min(worst_fraction, static_cast<double>(below) / raws.size());
        std::sort(raws.begin(), raws.end());
        worst_p99 = std::max(worst_p99, raws[static_cast<size_t>(raws.size() * 0.99)]);
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "max vector-component drift %.2e (tol 1e-2); raw<0.05 on %.2f%% of interior "
                  "(needs 99%%), p99=%.3f",
                  worst_component, 100.0 * worst_fraction, worst_p99);
    report(4, "rotated hexagonal patterns keep their response vectors and stay reference-close",
           worst_component < 1e-2 && worst_fraction >= 0.99, detail);
}

// ---------------------------------------------------------------- criterion 5

void criterion_wavelength() {
    bool pass = true;
    std::string detail;
    for (const PatternKind kind : {PatternKind::stripe, PatternKind::hexagonal}) {
        for (double lambda : {16.0, 32.0, 64.0}) {
            PatternSpec spec;
            spec.kind = kind;
            spec.lambda = lambda;
            spec.width = 256;
            spec.height = 256;
            double detected = -1.0;
            try {
                detected = detect_wavelength(uniform_pattern(spec));
            } catch (const NoDominantPeakError&) {
            }
            const bool ok = detected == lambda;  // exact at bin resolution
            pass = pass && ok;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%s%s/%g->%g", detail.empty() ? "" : " ",
                          kind == PatternKind::stripe ? "stripe" : "hex", lambda, detected);
            detail += buf;
        }
    }
    bool noise_rejected = false;
    try {
        detect_wavelength(oracles::random_image(256, 256, 0xacce55ULL));
    } catch (const NoDominantPeakError&) {
        noise_rejected = true;
    }
    pass = pass && noise_rejected;
    detail += noise_rejected ? "; noise->NoDominantPeak" : "; noise NOT rejected";
    report(5, "dominant wavelength recovered exactly at bin resolution", pass, detail);
}

// ---------------------------------------------------------------- criterion 6

void criterion_response_structure() {
    PatternSpec stripe;
    stripe.kind = PatternKind::stripe;
    stripe.lambda = 16.0;
    stripe.width = 256;
    stripe.height = 256;
    const GrayImage stripe_img = uniform_pattern(stripe);

    auto stripe_field = [&](int m) {
        const double beta = published_scale_coefficients()[m - 1].C * stripe.lambda;
        return optimal_orientation(
            correlate(stripe_img, render_kernel({0, m}, beta), Boundary::periodic));
    };

    // stripe extrema at y = 0 mod 8, midpoints at y = 4 mod 8
    double worst_m2 = 0.0;
    double worst_m1 = 0.0;
    const OrientedResponseField f2 = stripe_field(2);
    const OrientedResponseField f1 = stripe_field(1);
    for (int x : {32, 96, 160, 224}) {
        for (int y = 1; y + 1 < 256; ++y) {
            if (f2.magnitude(x, y) > f2.magnitude(x, y - 1) &&
                f2.magnitude(x, y) > f2.magnitude(x, y + 1)) {
                const double nearest = std::round(y / 8.0) * 8.0;
                worst_m2 = std::max(worst_m2, std::abs(y - nearest));
            }
            if (f1.magnitude(x, y) > f1.magnitude(x, y - 1) &&
                f1.magnitude(x, y) > f1.magnitude(x, y + 1)) {
                const double nearest = std::round((y - 4.0) / 8.0) * 8.0 + 4.0;
                worst_m1 = std::max(worst_m1, std::abs(y - nearest));
            }
        }
    }

    PatternSpec hex;
    hex.kind = PatternKind::hexagonal;
    hex.lambda = 16.0;
    hex.width = 256;
    hex.height = 256;
    const GrayImage hex_img = uniform_pattern(hex);

    auto hex_maxima = [&](int m) {
        const double beta = published_scale_coefficients()[m - 1].C * hex.lambda;
        const OrientedResponseField field = optimal_orientation(
            correlate(hex_img, render_kernel({0, m}, beta), Boundary::periodic));
        double peak = 0.0;
        for (int y = 40; y < 216; ++y)
            for (int x = 40; x < 216; ++x) peak = std::max(peak, field.magnitude(x, y));
        std::vector<std::pair<int, int>> maxima;
        for (int y = 40; y < 216; ++y)
            for (int x = 40; x < 216; ++x) {
                const double v = field.magnitude(x, y);
                if (v < 0.5 * peak) continue;
                bool is_max = true;
                for (int dy = -1; dy <= 1 && is_max; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (field.magnitude(x + dx, y + dy) >= v) {
                            is_max = false;
                            break;
                        }
                    }
                if (is_max) maxima.emplace_back(x, y);
            }
        return maxima;
    };

    // lattice modes: maxima of the hexagonal cosine sum form a triangular
    // lattice spanned by (lambda/sqrt(3), lambda) and (2*lambda/sqrt(3), 0)
    std::vector<std::pair<double, double>> modes;
    const double ax = hex.lambda / std::sqrt(3.0);
    const double ay = hex.lambda;
    const double bx = 2.0 * hex.lambda / std::sqrt(3.0);
    for (int j = -40; j <= 40; ++j)
        for (int l = -40; l <= 40; ++l) {
            const double mx = j * ax + l * bx;
            const double my = j * ay;
            if (mx >= 30 && mx < 226 && my >= 30 && my < 226) modes.emplace_back(mx, my);
        }

    double worst_m6 = 0.0;
    for (const auto& [x, y] : hex_maxima(6)) {
        double best = 1e18;
        for (const auto& [mx, my] : modes) best = std::min(best, std::hypot(x - mx, y - my));
        worst_m6 = std::max(worst_m6, best);
    }

    // m=5 and m=1 respond at the same one-fold locations
    const auto maxima5 = hex_maxima(5);
    const auto maxima1 = hex_maxima(1);
    double worst_15 = 0.0;
    for (const auto& [x, y] : maxima5) {
        double best = 1e18;
        for (const auto& [x1, y1] : maxima1)
            best = std::min(best, std::hypot(double(x - x1), double(y - y1)));
        worst_15 = std::max(worst_15, best);
    }
    for (const auto& [x, y] : maxima1) {
        double best = 1e18;
        for (const auto& [x5, y5] : maxima5)
            best = std::min(best, std::hypot(double(x - x5), double(y - y5)));
        worst_15 = std::max(worst_15, best);
    }

    const bool pass = worst_m2 <= 1.0 && worst_m1 <= 1.0 && worst_m6 <= 1.0 && worst_15 <= 1.0;
    char detail[220];
    std::snprintf(detail, sizeof(detail),
                  "m=2 peaks off stripe extrema by <=%.1fpx; m=1 off midpoints by <=%.1fpx; "
                  "m=6 off lattice modes by <=%.2fpx; m=5 vs m=1 sites differ by <=%.2fpx "
                  "(all tol 1px)",
                  worst_m2, worst_m1, worst_m6, worst_15);
    report(6, "response fields land on the pattern's rotational-symmetry sites", pass, detail);
}

// ---------------------------------------------------------------- criterion 7

struct GrainRun {
    double band_mean = 0.0;
    double interior_mean = 0.0;
    double raw_min = 1e300;
    double raw_max = -1e300;
};

GrainRun run_two_grain(PatternKind kind, double second_orientation) {
    const int side = 320;
    const double lambda = 16.0;

    GrainFieldSpec spec;
    for (int g = 0; g < 2; ++g) {
        GrainFieldSpec::Grain grain;
        grain.pattern.kind = kind;
        grain.pattern.lambda = lambda;
        grain.pattern.width = side;
        grain.pattern.height = side;
        grain.pattern.orientation = g == 0 ? 0.0 : second_orientation;
        grain.region = MaskGrid(side, side, 0);
        for (int y = 0; y < side; ++y)
            for (int x = g == 0 ? 0 : side / 2; x < (g == 0 ? side / 2 : side); ++x)
                grain.region(x, y) = 1;
        spec.grains.push_back(std::move(grain));
    }
    const GrainField field = multi_grain_pattern(spec);

    const ResponseStack stack =
        compute_response_stack(field.image, published_set(), lambda, Boundary::periodic);
    const ReferenceSet ref = reference_set_from_rect(stack.vectors, 48, 128, 64, 64);
    const DistanceField map = response_distance_map(stack.vectors, ref);

    GrainRun run;
    double band_sum = 0.0;
    long band_n = 0;
    double interior_sum = 0.0;
    long interior_n = 0;
    const int frame = 48;  // keeps the wrap seams at the image edges out of the statistics
    for (int y = frame; y < side - frame; ++y)
        for (int x = frame; x < side - frame; ++x) {
            const double r = map.raw(x, y);
            run.raw_min = std::min(run.raw_min, r);
            run.raw_max = std::max(run.raw_max, r);
            if (field.boundary_mask(x, y)) {
                band_sum += r;
                ++band_n;
            } else {
                interior_sum += r;
                ++interior_n;
            }
        }
    run.band_mean = band_sum / band_n;
    run.interior_mean = interior_sum / interior_n;
    return run;
}

void criterion_defect_discrimination(const GrainRun& stripe_run, const GrainRun& hex_run) {
    const double stripe_ratio = stripe_run.band_mean / stripe_run.interior_mean;
    const double hex_ratio = hex_run.band_mean / hex_run.interior_mean;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "band/interior mean raw distance: stripe %.3f/%.3f = %.1fx, hex %.3f/%.3f = "
                  "%.1fx (needs >= 2x)",
                  stripe_run.band_mean, stripe_run.interior_mean, stripe_ratio,
                  hex_run.band_mean, hex_run.interior_mean, hex_ratio);
    report(7, "grain-boundary bands stand out in the response-distance maps",
           stripe_ratio >= 2.0 && hex_ratio >= 2.0, detail);
}

// ---------------------------------------------------------------- criterion 8

void criterion_oracle_equivalence() {
    const GrayImage image = oracles::random_image(32, 32, 0x0a11d0ULL);
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
        const ShapeletKernel kernel = render_kernel({0, m}, 8.0, 4.0);  // 9x9 grid
        for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
            const ComplexResponseField fft_path = correlate(image, kernel, boundary);
            const ComplexGrid direct = oracles::direct_correlate(image, kernel, boundary);
            double max_abs = 0.0;
            double max_err = 0.0;
            for (size_t i = 0; i < direct.values().size(); ++i) {
                max_abs = std::max(max_abs, std::abs(direct.values()[i]));
                max_err = std::max(max_err,
                                   std::abs(direct.values()[i] - fft_path.values.values()[i]));
            }
            worst = std::max(worst, max_err / max_abs);
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof(detail),
                  "max relative gap %.2e over six 9x9 kernels, both boundaries (tol 1e-9)",
                  worst);
    report(8, "frequency-domain correlation equals the direct spatial sum", worst < 1e-9,
           detail);
}

// ---------------------------------------------------------------- criterion 9

void criterion_invariance_suite(const GrainRun& stripe_run, const GrainRun& hex_run) {
    bool pass = true;
    std::string detail;

    // DC-shift invariance of every m >= 1 complex response
    {
        const GrayImage image = oracles::random_image(48, 48, 0xdc5411ULL, -0.5, 0.5);
        GrayImage shifted = image;
        for (auto& v : shifted.values()) v += 3.1;
        double worst = 0.0;
        for (int m = 1; m <= 6; ++m) {
            const ShapeletKernel kernel = render_kernel({0, m}, 14.0);
            const ComplexResponseField a = correlate(image, kernel, Boundary::periodic);
            const ComplexResponseField b = correlate(shifted, kernel, Boundary::periodic);
            for (size_t i = 0; i < a.values.values().size(); ++i)
                worst = std::max(worst,
                                 std::abs(a.values.values()[i] - b.values.values()[i]));
        }
        pass = pass && worst < 1e-9;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "DC shift %.1e", worst);
        detail += buf;
    }

    // amplitude-scaling invariance of normalized vectors and distances
    {
        PatternSpec spec;
        spec.kind = PatternKind::stripe;
        spec.lambda = 16.0;
        spec.width = 128;
        spec.height = 128;
        const GrayImage image = uniform_pattern(spec);
        GrayImage scaled = image;
        for (auto& v : scaled.values()) v *= 2.71;
        const ResponseStack a =
            compute_response_stack(image, published_set(), spec.lambda, Boundary::periodic);
        const ResponseStack b =
            compute_response_stack(scaled, published_set(), spec.lambda, Boundary::periodic);
        double worst = 0.0;
        for (size_t i = 0; i < a.vectors.values.size(); ++i)
            worst = std::max(worst, std::abs(a.vectors.values[i] - b.vectors.values[i]));
        const ReferenceSet ra = reference_set_from_rect(a.vectors, 16, 16, 24, 24);
        const ReferenceSet rb = reference_set_from_rect(b.vectors, 16, 16, 24, 24);
        const DistanceField da = response_distance_map(a.vectors, ra);
        const DistanceField db = response_distance_map(b.vectors, rb);
        for (size_t i = 0; i < da.raw.values().size(); ++i)
            worst = std::max(worst, std::abs(da.raw.values()[i] - db.raw.values()[i]));
        pass = pass && worst < 1e-9;

        // unit-norm invariant of the response vectors
        double worst_norm = 0.0;
        for (int y = 0; y < 128; ++y)
            for (int x = 0; x < 128; ++x) {
                const double* v = a.vectors.at(x, y);
                double n = 0.0;
                for (int i = 0; i < 6; ++i) n += v[i] * v[i];
                worst_norm = std::max(worst_norm, std::abs(std::sqrt(n) - 1.0));
            }
        pass = pass && worst_norm < 1e-12;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "; amplitude scaling %.1e; unit-norm %.1e", worst,
                      worst_norm);
        detail += buf;
    }

    // raw distance bounds on the defect maps of criterion 7
    {
        const double lo = std::min(stripe_run.raw_min, hex_run.raw_min);
        const double hi = std::max(stripe_run.raw_max, hex_run.raw_max);
        pass = pass && lo >= 0.0 && hi <= 2.0;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "; raw distances in [%.2e, %.3f]", lo, hi);
        detail += buf;
    }

    report(9, "invariance suite: DC shift, amplitude scaling, unit norms, distance bounds",
           pass, detail);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_table1();
    criterion_steerability();
    criterion_orientation_oracle();
    criterion_rotation_invariance();
    criterion_wavelength();
    criterion_response_structure();
    const GrainRun stripe_run = run_two_grain(PatternKind::stripe, pi / 2.0);
    const GrainRun hex_run = run_two_grain(PatternKind::hexagonal, pi / 6.0);
    criterion_defect_discrimination(stripe_run, hex_run);
    criterion_oracle_equivalence();
    criterion_invariance_suite(stripe_run, hex_run);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/9 criteria passed in %.1fs\n", 9 - failures, seconds);
    return failures;
}
