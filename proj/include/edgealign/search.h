/**
 * @file search.h
 * @brief Exhaustive pose-grid maximization and coarse-to-fine refinement with
 *        interchangeable serial/parallel backends.
 *
 * Backend contract: serial and parallel return bit-equal scores and the same
 * winning grid index for every input. Per-pose scores are computed in a fixed
 * order and never split across workers; the cross-pose reduction keeps the
 * max score with the smallest linear index, which is associative and
 * commutative, so any partition of the pose range yields the same winner.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "edgealign/edge_model.h"
#include "edgealign/gradient.h"
#include "edgealign/image.h"
#include "edgealign/pose.h"
#include "edgealign/similarity.h"

namespace edgealign {

enum class BackendKind { Serial, Parallel };

struct Backend {
    BackendKind kind = BackendKind::Serial;
    int worker_count = 0;  // parallel only; 0 = hardware default
};

/// Number of threads a backend resolves to on this machine.
int resolved_workers(const Backend& backend);

struct LevelTrace {
    int level = 0;
    Pose pose;     // in that level's pixel coordinates
    double score = 0.0;
};

struct Detection {
    Pose pose;                 // level-0 coordinates
    double score = 0.0;
    std::vector<LevelTrace> level_trace;  // ordered coarse to fine
    std::size_t grid_index = 0;           // winning top-level pose index
};

struct SearchConfig {
    PoseGrid grid;            // defined at pyramid level 0 scale
    int num_levels = 3;
    ScoreParams score_params;
    std::optional<EdgeThresholds> thresholds;  // unset: per-level defaults
    double min_score = 0.5;
    int topk = 5;
    int refine_radius = 2;    // local window half-width, in steps
    Backend backend;
};

/// Detection when found; best always carries the top level-0 candidate so
/// callers can report the best score behind a no-detection.
struct SearchOutcome {
    bool found = false;
    Detection best;
};

struct ScoredPose {
    double score = 0.0;
    std::size_t grid_index = 0;
    Pose pose;
};

/// Score every grid pose, return the maximum; ties go to the smallest linear
/// index under the (theta, y, x) order.
Detection exhaustive_search(const EdgeModel& model, const GradientField& field,
                            const PoseGrid& grid, const ScoreParams& params,
                            const Backend& backend);

/// Top k grid poses by (score desc, index asc); indices are distinct by
/// construction.
std::vector<ScoredPose> search_topk(const EdgeModel& model,
                                    const GradientField& field,
                                    const PoseGrid& grid,
                                    const ScoreParams& params,
                                    const Backend& backend, int k);

/// Dense score per grid index. Refuses when grid size exceeds max_cells.
std::vector<double> score_map(const EdgeModel& model, const GradientField& field,
                              const PoseGrid& grid, const ScoreParams& params,
                              std::size_t max_cells);

/// Per-level inputs for a pyramid search: edge model and working gradient
/// field at each level. Building this is the untimed preparation stage.
struct PyramidLevels {
    std::vector<EdgeModel> models;
    std::vector<GradientField> fields;
};

PyramidLevels prepare_levels(const Pyramid& template_pyr,
                             const Pyramid& working_pyr,
                             const SearchConfig& config);

/// The search stage alone: exhaustive at the pyramid top on the scaled grid,
/// then a topk candidate beam refined down to level 0 (translations doubled,
/// steps halved, +-refine_radius lattice per axis; theta step floor 0.25deg).
SearchOutcome search_levels(const PyramidLevels& levels,
                            const SearchConfig& config);

/// prepare_levels + search_levels.
SearchOutcome coarse_to_fine(const Pyramid& template_pyr,
                             const Pyramid& working_pyr,
                             const SearchConfig& config);

}  // namespace edgealign
