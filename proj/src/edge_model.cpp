/**
 * @file edge_model.cpp
 * @brief Edge model extraction: direction-quantized non-maximum suppression
 *        followed by dual-threshold hysteresis.
 */
#include "edgealign/edge_model.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgealign/errors.h"
#include "edgealign/pose.h"

namespace edgealign {

EdgeThresholds default_thresholds(const GradientField& field) {
    double max_mag = 0.0;
    for (const double m : field.mag) {
        max_mag = std::max(max_mag, m);
    }
    const double high = 0.3 * max_mag;
    return {0.5 * high, high};
}

int model_point_count(const EdgeModel& model) {
    return static_cast<int>(model.points.size());
}

namespace {

/// Gradient angle folded to [0, 180) and quantized into 4 bins centered at
/// 0/45/90/135 degrees. Boundaries (22.5 etc.) belong to the lower bin.
int orientation_bin(double gx, double gy) {
    double a = std::atan2(gy, gx);
    if (a < 0.0) {
        a += kPi;
    }
    constexpr double kStep = kPi / 8.0;  // 22.5 degrees
    if (a <= kStep) return 0;
    if (a <= 3.0 * kStep) return 1;
    if (a <= 5.0 * kStep) return 2;
    if (a <= 7.0 * kStep) return 3;
    return 0;
}

// Neighbor offsets along the gradient for each bin (the +offset side).
constexpr int kOffX[4] = {1, 1, 0, -1};
constexpr int kOffY[4] = {0, 1, 1, 1};

}  // namespace

EdgeModel extract_edge_model(const GradientField& field,
                             const EdgeThresholds& thresholds, int level) {
    if (thresholds.low < 0.0 || thresholds.low > thresholds.high) {
        throw InvalidArgument("edge thresholds need 0 <= low <= high");
    }
    const int w = field.width;
    const int h = field.height;

    double max_mag = 0.0;
    for (const double m : field.mag) {
        max_mag = std::max(max_mag, m);
    }

    // Non-maximum suppression: keep pixels not dominated along the gradient
    // line. Strict toward the +offset, non-strict toward the -offset, so a
    // 2-wide plateau keeps exactly the +side pixel.
    enum : std::uint8_t { kOut = 0, kWeak = 1, kStrong = 2 };
    std::vector<std::uint8_t> state(field.mag.size(), kOut);
    for (int y = 1; y + 1 < h; ++y) {
        for (int x = 1; x + 1 < w; ++x) {
            const std::size_t i = field.index(x, y);
            const double m = field.mag[i];
            if (m <= 0.0 || m < thresholds.low) {
                continue;
            }
            const int bin = orientation_bin(field.gx[i], field.gy[i]);
            const double fwd = field.mag[field.index(x + kOffX[bin], y + kOffY[bin])];
            const double bwd = field.mag[field.index(x - kOffX[bin], y - kOffY[bin])];
            if (m > fwd && m >= bwd) {
                state[i] = (m >= thresholds.high) ? kStrong : kWeak;
            }
        }
    }

    // Hysteresis: strong survivors seed an 8-connected flood through weak ones.
    std::vector<std::uint8_t> kept(state.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] == kStrong && !kept[i]) {
            kept[i] = 1;
            stack.push_back(i);
            while (!stack.empty()) {
                const std::size_t p = stack.back();
                stack.pop_back();
                const int px = static_cast<int>(p % w);
                const int py = static_cast<int>(p / w);
                for (int ddy = -1; ddy <= 1; ++ddy) {
                    for (int ddx = -1; ddx <= 1; ++ddx) {
                        if (ddx == 0 && ddy == 0) continue;
                        const int qx = px + ddx;
                        const int qy = py + ddy;
                        if (!field.in_bounds(qx, qy)) continue;
                        const std::size_t q = field.index(qx, qy);
                        if (!kept[q] && state[q] != kOut) {
                            kept[q] = 1;
                            stack.push_back(q);
                        }
                    }
                }
            }
        }
    }

    // Emit points in row-major order; this order is what scoring sums in.
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i]) {
            indices.push_back(i);
        }
    }
    if (indices.empty()) {
        throw EmptyModelError(max_mag);
    }

    double sum_x = 0.0, sum_y = 0.0;
    for (const std::size_t i : indices) {
        sum_x += static_cast<double>(i % w);
        sum_y += static_cast<double>(i / w);
    }
    const double n = static_cast<double>(indices.size());
    const double cx = sum_x / n;
    const double cy = sum_y / n;

    EdgeModel model;
    model.centroid_x = cx;
    model.centroid_y = cy;
    model.source_level = level;
    model.points.reserve(indices.size());
    for (const std::size_t i : indices) {
        const double x = static_cast<double>(i % w);
        const double y = static_cast<double>(i / w);
        const double m = field.mag[i];
        model.points.push_back(EdgePoint{x - cx, y - cy, field.gx[i] / m,
                                         field.gy[i] / m, m});
    }
    return model;
}

}  // namespace edgealign
