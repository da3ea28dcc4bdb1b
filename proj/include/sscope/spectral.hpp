#ifndef SSCOPE_SPECTRAL_HPP
#define SSCOPE_SPECTRAL_HPP

#include "sscope/grid.hpp"

#include <vector>

namespace sscope {

/// Squared-magnitude DFT of an image, shifted so the zero-frequency bin sits
/// at the grid center (width/2, height/2).
struct SpectralDensity {
    GrayImage values;
};

/// Radially averaged spectral density: one entry per integer radius bin that
/// contains at least one pixel, radii strictly increasing from 0.
struct RadialProfile {
    struct Entry {
        double wavenumber;  // radial bin, cycles per image side
        double mean_power;
    };
    std::vector<Entry> entries;
};

struct WavelengthOptions {
    int k_min = 2;             // lowest radial bin searched (DC exclusion)
    double prominence = 10.0;  // peak must exceed prominence * profile median
};

/// Centered |DFT|^2 of the image. Total power equals width*height*sum(f^2).
/// Rejects images smaller than 16 pixels on a side.
SpectralDensity spectral_density(const GrayImage& image);

/// Bins density pixels by rounded integer radius from the center bin and
/// averages within each annulus.
RadialProfile radial_average(const SpectralDensity& sd);

/// Wavelength of the dominant radial peak: image_side / k*, searching bins
/// k >= k_min and requiring the peak to exceed the profile median (over the
/// searched bins) by the prominence factor. Throws NoDominantPeakError when
/// nothing qualifies.
double dominant_wavelength(const RadialProfile& profile, int image_side,
                           const WavelengthOptions& opts = {});

/// Full detection chain for arbitrary images: subtract the mean, zero-pad to
/// the smallest enclosing square, then run the spectral-peak search.
double detect_wavelength(const GrayImage& image, const WavelengthOptions& opts = {});

} // namespace sscope

#endif
