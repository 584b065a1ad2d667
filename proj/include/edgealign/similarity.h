/**
 * @file similarity.h
 * @brief Edge-orientation consistency scoring.
 *
 * The measure is the mean over model points of a normalized dot product
 * between the rotated model direction and the working-image gradient at the
 * projected position,
 *
 *     M = (1/n) * sum_i max over window of (d_i . g(x)) / |g(x)|,
 *
 * where the max runs over a small pixel window around each projection (the
 * anti-clutter vote) and pixels with near-zero gradient magnitude contribute
 * a neutral 0. Out-of-bounds projections contribute 0 but stay in the
 * denominator. Votes are summed in model point order, so a score is a pure,
 * bit-reproducible function of its inputs.
 */
#pragma once

#include <vector>

#include "edgealign/edge_model.h"
#include "edgealign/gradient.h"
#include "edgealign/pose.h"

namespace edgealign {

/// Signed keeps the raw dot product (contrast polarity matters); Ignore takes
/// the absolute value of each candidate, making contrast reversal score alike.
enum class Polarity { Signed, Ignore };

struct ScoreParams {
    int neighborhood = 3;                   // odd window size in pixels
    Polarity polarity = Polarity::Signed;
    double eps_mag = 1e-9;                  // below this, a pixel votes 0
};

/// Throws InvalidArgument unless neighborhood is odd and >= 1 and eps_mag > 0.
void validate(const ScoreParams& params);

struct PoseScore {
    double value = 0.0;   // [-1,1] signed, [0,1] ignore (within 1e-9)
    int n_inbounds = 0;   // model points whose projection landed in bounds
};

/// Max vote for one pre-rotated unit direction over the window centered at
/// integer pixel (cx, cy), clipped to the image. Returns 0 when no window
/// pixel is in bounds.
double point_vote(double dir_x, double dir_y, const GradientField& field,
                  int cx, int cy, const ScoreParams& params);

/// Model positions and directions rotated by a fixed theta, centroid still at
/// the origin. Search loops build one of these per theta and sweep
/// translations, which is arithmetically identical to per-pose transforms.
struct RotatedModel {
    std::vector<double> px, py;  // rotated centroid-relative positions
    std::vector<double> dx, dy;  // rotated unit directions
};

RotatedModel rotate_model(const EdgeModel& model, double theta);

PoseScore score_rotated(const RotatedModel& rotated, double ux, double uy,
                        const GradientField& field, const ScoreParams& params);

/// Eq-style whole-pose score: project every model point, co-rotate its
/// direction, vote and average. Throws InvalidArgument on an empty model.
PoseScore pose_score(const EdgeModel& model, const Pose& pose,
                     const GradientField& field, const ScoreParams& params);

}  // namespace edgealign
