#ifndef SSCOPE_ERRORS_HPP
#define SSCOPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sscope {

/// Raised when no radial spectral-density bin stands out above the
/// prominence threshold, i.e. the image carries no detectable pattern.
class NoDominantPeakError : public std::runtime_error {
public:
    explicit NoDominantPeakError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by file input/output (unreadable files, unsupported formats).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sscope

#endif
