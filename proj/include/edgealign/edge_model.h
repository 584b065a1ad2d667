/**
 * @file edge_model.h
 * @brief Sparse oriented edge model extracted from a template image.
 *
 * Extraction is Canny-style without pre-smoothing: non-maximum suppression
 * along the quantized gradient direction, then dual-threshold hysteresis.
 * Surviving pixels become edge points holding centroid-relative position and
 * unit gradient direction.
 */
#pragma once

#include <vector>

#include "edgealign/gradient.h"

namespace edgealign {

/// Dual hysteresis thresholds on gradient magnitude, 0 <= low <= high.
struct EdgeThresholds {
    double low = 0.0;
    double high = 0.0;
};

/// Magnitude-relative default: high = 0.3 * max magnitude, low = 0.5 * high.
EdgeThresholds default_thresholds(const GradientField& field);

/// One template edge pixel: position relative to the model centroid plus the
/// unit gradient direction and source magnitude.
struct EdgePoint {
    double x_rel = 0.0;
    double y_rel = 0.0;
    double dx = 0.0;  // unit gradient direction
    double dy = 0.0;
    double mag = 0.0;
};

/// The shape being searched. Points are ordered row-major (y, then x) in the
/// source image; scoring sums votes in this order, which makes every score
/// deterministic.
struct EdgeModel {
    std::vector<EdgePoint> points;
    double centroid_x = 0.0;  // absolute, in source-level coordinates
    double centroid_y = 0.0;
    int source_level = 0;
};

/// Returns n, the number of model points.
int model_point_count(const EdgeModel& model);

/// NMS + hysteresis extraction. Throws EmptyModelError (carrying the max
/// observed magnitude) when nothing survives.
EdgeModel extract_edge_model(const GradientField& field,
                             const EdgeThresholds& thresholds, int level);

}  // namespace edgealign
