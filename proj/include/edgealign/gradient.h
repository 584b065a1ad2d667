/**
 * @file gradient.h
 * @brief Dense per-pixel gradient field, the scoring substrate.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "edgealign/image.h"

namespace edgealign {

/// Per-pixel signed gradients and magnitudes, row-major, same dims as the
/// source image. The outermost pixel ring is zero (the Sobel window does not
/// fit there).
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> gx, gy, mag;

    GradientField() = default;
    GradientField(int w, int h)
        : width(w),
          height(h),
          gx(static_cast<std::size_t>(w) * h, 0.0),
          gy(static_cast<std::size_t>(w) * h, 0.0),
          mag(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
};

/// 3x3 Sobel gradients (unnormalized integer weights, y increasing downward)
/// for every interior pixel; border ring stays zero. Requires >= 3x3.
GradientField compute_gradients(const Image& image);

}  // namespace edgealign
