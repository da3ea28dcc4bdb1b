#ifndef SSCOPE_FFT_HPP
#define SSCOPE_FFT_HPP

#include "sscope/grid.hpp"

namespace sscope {

/// Unnormalized forward 2-D DFT, negative exponent convention.
ComplexGrid fft2(const ComplexGrid& in);

/// Inverse 2-D DFT including the 1/(W*H) factor.
ComplexGrid ifft2(const ComplexGrid& in);

ComplexGrid to_complex(const GrayImage& in);

} // namespace sscope

#endif
