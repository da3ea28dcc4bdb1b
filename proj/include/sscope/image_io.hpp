#ifndef SSCOPE_IMAGE_IO_HPP
#define SSCOPE_IMAGE_IO_HPP

#include "sscope/grid.hpp"
#include "sscope/response.hpp"

#include <string>

namespace sscope {

/// Loads an 8/16-bit grayscale PGM (P2/P5) or grayscale PNG and maps sample
/// values to [0,1] by dividing by the format's maximum value. Unreadable
/// files and unsupported formats raise IoError with distinct diagnostics;
/// color PNGs are rejected naming the color mode.
GrayImage load_image(const std::string& path);

/// Binary mask: loads like an image, pixels > 0.5 are set.
MaskGrid load_mask(const std::string& path);

enum class SaveMode { normalized_image, raw_csv };

/// normalized_image: 16-bit grayscale (PGM or PNG by extension) with the
/// field min mapped to 0 and max to 65535; a constant field writes all
/// zeros. raw_csv: full-precision `x,y,value` rows, row-major, with header.
void save_field(const GrayImage& field, const std::string& path, SaveMode mode);

/// 16-bit grayscale image with a fixed value range [lo, hi] instead of
/// min-max scaling (used for orientation maps with their known period).
void save_fixed_range_image(const GrayImage& field, double lo, double hi,
                            const std::string& path);

/// Binary image: 0 or 255, 8-bit (PGM or PNG by extension).
void save_mask(const MaskGrid& mask, const std::string& path);

/// Per-pixel vectors as `x,y,v1,..,vp` rows, row-major, with header.
void save_vector_field_csv(const ResponseVectorField& field, const std::string& path);

/// Reads back a `x,y,value` CSV written by save_field(raw_csv).
GrayImage load_field_csv(const std::string& path);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

} // namespace sscope

#endif
