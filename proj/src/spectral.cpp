#include "sscope/spectral.hpp"

#include "sscope/errors.hpp"
#include "sscope/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sscope {

SpectralDensity spectral_density(const GrayImage& image) {
    const int w = image.width();
    const int h = image.height();
    if (w < 16 || h < 16)
        throw std::invalid_argument("spectral_density: image must be at least 16x16");

    const ComplexGrid spectrum = fft2(to_complex(image));
    SpectralDensity sd{GrayImage(w, h)};
    // fftshift: frequency bin k lands at (k + N/2) mod N so DC is centered.
    for (int v = 0; v < h; ++v) {
        const int vs = (v + h / 2) % h;
        for (int u = 0; u < w; ++u) {
            const int us = (u + w / 2) % w;
            sd.values(us, vs) = std::norm(spectrum(u, v));
        }
    }
    return sd;
}

RadialProfile radial_average(const SpectralDensity& sd) {
    const int w = sd.values.width();
    const int h = sd.values.height();
    const int cx = w / 2;
    const int cy = h / 2;

    std::map<int, std::pair<double, long>> bins;  // radius -> (sum, count)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int r = static_cast<int>(
                std::lround(std::hypot(static_cast<double>(x - cx), static_cast<double>(y - cy))));
            auto& [sum, count] = bins[r];
            sum += sd.values(x, y);
            ++count;
        }
    }

    RadialProfile profile;
    profile.entries.reserve(bins.size());
    for (const auto& [r, acc] : bins)
        profile.entries.push_back({static_cast<double>(r), acc.first / acc.second});
    return profile;
}

double dominant_wavelength(const RadialProfile& profile, int image_side,
                           const WavelengthOptions& opts) {
    if (image_side <= 0)
        throw std::invalid_argument("dominant_wavelength: image_side must be positive");

    std::vector<double> searched;
    double best_power = -1.0;
    double best_k = 0.0;
    for (const auto& e : profile.entries) {
        if (e.wavenumber < opts.k_min) continue;
        searched.push_back(e.mean_power);
        if (e.mean_power > best_power) {
            best_power = e.mean_power;
            best_k = e.wavenumber;
        }
    }
    if (searched.empty())
        throw NoDominantPeakError("dominant_wavelength: no bins beyond the DC exclusion");

    std::vector<double> sorted = searched;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    const double median =
        (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    if (!(best_power > opts.prominence * median))
        throw NoDominantPeakError("dominant_wavelength: no radial peak exceeds " +
                                  std::to_string(opts.prominence) +
                                  "x the profile median (unpatterned image?)");
    return static_cast<double>(image_side) / best_k;
}

double detect_wavelength(const GrayImage& image, const WavelengthOptions& opts) {
    const int w = image.width();
    const int h = image.height();
    if (w < 16 || h < 16)
        throw std::invalid_argument("detect_wavelength: image must be at least 16x16");

    double mean = 0.0;
    for (double v : image.values()) mean += v;
    mean /= static_cast<double>(image.size());

    // Mean subtraction suppresses DC leakage; zero-padding to the smallest
    // enclosing square keeps one isotropic frequency scale.
    const int side = std::max(w, h);
    GrayImage padded(side, side, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            padded(x, y) = image(x, y) - mean;

    const RadialProfile profile = radial_average(spectral_density(padded));
    return dominant_wavelength(profile, side, opts);
}

} // namespace sscope
