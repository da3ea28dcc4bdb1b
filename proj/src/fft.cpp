#include "sscope/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace sscope {

namespace {

// FFTW planner calls are not thread-safe; execution is.
std::mutex planner_mutex;

ComplexGrid transform(const ComplexGrid& in, int sign) {
    ComplexGrid out(in.width(), in.height());
    // std::complex<double> is layout-compatible with fftw_complex.
    auto* src = reinterpret_cast<fftw_complex*>(
        const_cast<std::complex<double>*>(in.values().data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.values().data());

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        // FFTW is row-major with the first dimension slowest: (height, width).
        plan = fftw_plan_dft_2d(in.height(), in.width(), src, dst, sign,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace

ComplexGrid fft2(const ComplexGrid& in) {
    return transform(in, FFTW_FORWARD);
}

ComplexGrid ifft2(const ComplexGrid& in) {
    ComplexGrid out = transform(in, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(in.width()) * in.height());
    for (auto& v : out.values()) v *= scale;
    return out;
}

ComplexGrid to_complex(const GrayImage& in) {
    ComplexGrid out(in.width(), in.height());
    for (size_t i = 0; i < in.values().size(); ++i)
        out.values()[i] = std::complex<double>(in.values()[i], 0.0);
    return out;
}

} // namespace sscope
