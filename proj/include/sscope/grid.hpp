#ifndef SSCOPE_GRID_HPP
#define SSCOPE_GRID_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace sscope {

/// Dense row-major 2-D grid. Index convention is (x, y) with x the column
/// and y the row; image coordinates have y increasing downward.
template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          values_(static_cast<size_t>(width) * static_cast<size_t>(height), fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Grid: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return values_.size(); }

    T& operator()(int x, int y) { return values_[static_cast<size_t>(y) * width_ + x]; }
    const T& operator()(int x, int y) const { return values_[static_cast<size_t>(y) * width_ + x]; }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }
    bool same_shape(const Grid& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    std::vector<T>& values() { return values_; }
    const std::vector<T>& values() const { return values_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> values_;
};

using GrayImage = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;
using MaskGrid = Grid<unsigned char>;

} // namespace sscope

#endif
