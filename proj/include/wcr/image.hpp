#pragma once

#include <cstddef>
#include <vector>

#include "wcr/errors.hpp"

namespace wcr {

// 2-D grayscale raster, row-major doubles. Pixel data read from files lives
// in [0,1]; intermediate buffers (gradients, residuals) reuse the type
// without that restriction.
struct ImageGrid {
    int width = 0;
    int height = 0;
    std::vector<double> samples;

    ImageGrid() = default;
    ImageGrid(int w, int h, double fill = 0.0)
        : width(w), height(h),
          samples(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w <= 0 || h <= 0) throw ShapeError("ImageGrid: dimensions must be positive");
    }

    double& at(int r, int c) {
        return samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(c)];
    }
    double at(int r, int c) const {
        return samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(c)];
    }
    std::size_t size() const { return samples.size(); }

    bool same_shape(const ImageGrid& other) const {
        return width == other.width && height == other.height;
    }
};

inline void require_same_shape(const ImageGrid& a, const ImageGrid& b, const char* op) {
    if (!a.same_shape(b)) throw ShapeError(std::string(op) + ": image shapes differ");
}

// Sum of squares with a fixed reduction order (per-row partials combined
// serially), so the result is bit-identical for any thread count.
double det_squared_norm(const ImageGrid& img);
double det_dot(const ImageGrid& a, const ImageGrid& b);

} // namespace wcr
