/**
 * @file reference_score.h
 * @brief Independent brute-force scoring reference.
 *
 * Straight triple-loop evaluation of the orientation-consistency measure and
 * the rigid transform, written directly from the formulas. It shares only the
 * data types (model, field, grid) with the library and none of the scoring or
 * search code, so it can arbitrate them.
 */
#pragma once

#include <cstddef>

#include "edgealign/edge_model.h"
#include "edgealign/gradient.h"
#include "edgealign/pose.h"

namespace edgealign::testref {

/// Score of one pose: mean over model points of the max normalized dot
/// product in a (2r+1)^2 window around the rounded projection.
double reference_pose_score(const EdgeModel& model, const GradientField& field,
                            double ux, double uy, double theta,
                            int neighborhood, bool absolute, double eps_mag);

struct ReferenceBest {
    double score = 0.0;
    std::size_t index = 0;
};

/// Argmax over the full grid in (theta, y, x) linearization order, ties to
/// the smallest index.
ReferenceBest reference_grid_argmax(const EdgeModel& model,
                                    const GradientField& field,
                                    const PoseGrid& grid, int neighborhood,
                                    bool absolute, double eps_mag);

}  // namespace edgealign::testref
