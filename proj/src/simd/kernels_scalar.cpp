/**
 * @file kernels_scalar.cpp
 * @brief Reference kernels. The operation order here is normative: SIMD
 *        variants must replicate it element for element.
 */
#include <cmath>
#include <limits>

#include "edgealign/simd/kernels.h"

namespace edgealign::simd {
namespace {

void sobel_row_scalar(const double* above, const double* mid, const double* below,
                      int width, double* gx, double* gy, double* mag) {
    for (int x = 1; x + 1 < width; ++x) {
        const double a = above[x - 1], b = above[x], c = above[x + 1];
        const double d = mid[x - 1], f = mid[x + 1];
        const double g = below[x - 1], h = below[x], i = below[x + 1];
        const double ew = f - d;
        const double ns = h - b;
        const double sx = ((c - a) + (ew + ew)) + (i - g);
        const double sy = ((g - a) + (ns + ns)) + (i - c);
        gx[x] = sx;
        gy[x] = sy;
        mag[x] = std::sqrt(sx * sx + sy * sy);
    }
}

void downsample_row_scalar(const double* top, const double* bot, int out_width,
                           double* out) {
    for (int i = 0; i < out_width; ++i) {
        const double t = top[2 * i] + top[2 * i + 1];
        const double u = bot[2 * i] + bot[2 * i + 1];
        out[i] = (t + u) * 0.25;
    }
}

double vote_span_scalar(const double* gx, const double* gy, const double* mag,
                        int x0, int x1, double dx, double dy, double eps_mag,
                        bool absolute) {
    double best = -std::numeric_limits<double>::infinity();
    for (int x = x0; x <= x1; ++x) {
        double cand = 0.0;
        if (mag[x] >= eps_mag) {
            cand = (dx * gx[x] + dy * gy[x]) / mag[x];
        }
        if (absolute) {
            cand = std::fabs(cand);
        }
        if (cand > best) {
            best = cand;
        }
    }
    return best;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels table{sobel_row_scalar, downsample_row_scalar,
                               vote_span_scalar};
    return table;
}

}  // namespace edgealign::simd
