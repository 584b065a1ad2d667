/**
 * @file search.cpp
 * @brief Grid maximization backends and coarse-to-fine pyramid refinement.
 */
#include "edgealign/search.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "edgealign/errors.h"

namespace edgealign {

int resolved_workers(const Backend& backend) {
    if (backend.kind == BackendKind::Serial) {
        return 1;
    }
    if (backend.worker_count > 0) {
        return backend.worker_count;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

struct Cand {
    double score = 0.0;
    std::size_t index = 0;
};

/// Total order used by every reduction: higher score first, then smaller
/// index. Associative and commutative, so any pose-range partition reduces to
/// the same winner.
inline bool better(const Cand& a, const Cand& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.index < b.index;
}

/// Fixed-capacity best-k accumulator.
class TopK {
public:
    explicit TopK(int k) : k_(static_cast<std::size_t>(k)) {}

    void offer(double score, std::size_t index) {
        const Cand c{score, index};
        if (items_.size() == k_ && !better(c, items_.back())) {
            return;
        }
        auto at = std::upper_bound(
            items_.begin(), items_.end(), c,
            [](const Cand& a, const Cand& b) { return better(a, b); });
        items_.insert(at, c);
        if (items_.size() > k_) {
            items_.pop_back();
        }
    }

    const std::vector<Cand>& items() const { return items_; }

private:
    std::size_t k_;
    std::vector<Cand> items_;
};

/// Evaluate grid indices [lo, hi), feeding every (score, index) into `out`.
/// The rotated model is cached per theta block; scoring itself is the fixed
/// per-pose order from score_rotated, identical for every backend.
void scan_range(const EdgeModel& model, const GradientField& field,
                const PoseGrid& grid, const GridCounts& counts,
                const ScoreParams& params, std::size_t lo, std::size_t hi,
                TopK& out) {
    const std::size_t plane = counts.nx * counts.ny;
    std::size_t cached_it = static_cast<std::size_t>(-1);
    RotatedModel rotated;
    for (std::size_t idx = lo; idx < hi; ++idx) {
        const std::size_t it = idx / plane;
        if (it != cached_it) {
            rotated = rotate_model(model, grid.t0 + static_cast<double>(it) * grid.dt);
            cached_it = it;
        }
        const std::size_t rem = idx % plane;
        const std::size_t iy = rem / counts.nx;
        const std::size_t ix = rem % counts.nx;
        const double ux = grid.x0 + static_cast<double>(ix) * grid.dx;
        const double uy = grid.y0 + static_cast<double>(iy) * grid.dy;
        const PoseScore s = score_rotated(rotated, ux, uy, field, params);
        out.offer(s.value, idx);
    }
}

std::vector<Cand> run_search(const EdgeModel& model, const GradientField& field,
                             const PoseGrid& grid, const ScoreParams& params,
                             const Backend& backend, int k) {
    validate(params);
    if (model.points.empty()) {
        throw InvalidArgument("search needs a nonempty model");
    }
    if (k < 1) {
        throw InvalidArgument("topk must be >= 1");
    }
    const GridCounts counts = grid_counts(grid);
    const std::size_t total = counts.nx * counts.ny * counts.nt;

    const std::size_t workers = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(resolved_workers(backend)),
                              total));

    std::vector<TopK> locals(workers, TopK(k));
    if (workers <= 1) {
        scan_range(model, field, grid, counts, params, 0, total, locals[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = total * w / workers;
            const std::size_t hi = total * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w] {
                scan_range(model, field, grid, counts, params, lo, hi, locals[w]);
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    std::vector<Cand> merged;
    for (const auto& local : locals) {
        merged.insert(merged.end(), local.items().begin(), local.items().end());
    }
    std::sort(merged.begin(), merged.end(),
              [](const Cand& a, const Cand& b) { return better(a, b); });
    if (merged.size() > static_cast<std::size_t>(k)) {
        merged.resize(static_cast<std::size_t>(k));
    }
    return merged;
}

}  // namespace

Detection exhaustive_search(const EdgeModel& model, const GradientField& field,
                            const PoseGrid& grid, const ScoreParams& params,
                            const Backend& backend) {
    const auto best = run_search(model, field, grid, params, backend, 1);
    Detection det;
    det.pose = pose_at(grid, best[0].index);
    det.score = best[0].score;
    det.grid_index = best[0].index;
    return det;
}

std::vector<ScoredPose> search_topk(const EdgeModel& model,
                                    const GradientField& field,
                                    const PoseGrid& grid,
                                    const ScoreParams& params,
                                    const Backend& backend, int k) {
    const auto cands = run_search(model, field, grid, params, backend, k);
    std::vector<ScoredPose> out;
    out.reserve(cands.size());
    for (const Cand& c : cands) {
        out.push_back(ScoredPose{c.score, c.index, pose_at(grid, c.index)});
    }
    return out;
}

std::vector<double> score_map(const EdgeModel& model, const GradientField& field,
                              const PoseGrid& grid, const ScoreParams& params,
                              std::size_t max_cells) {
    validate(params);
    if (model.points.empty()) {
        throw InvalidArgument("score_map needs a nonempty model");
    }
    const GridCounts counts = grid_counts(grid);
    const std::size_t total = counts.nx * counts.ny * counts.nt;
    if (total > max_cells) {
        throw BudgetError("score_map needs " + std::to_string(total) +
                          " cells but the budget allows " +
                          std::to_string(max_cells));
    }
    std::vector<double> out(total);
    const std::size_t plane = counts.nx * counts.ny;
    std::size_t cached_it = static_cast<std::size_t>(-1);
    RotatedModel rotated;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t it = idx / plane;
        if (it != cached_it) {
            rotated = rotate_model(model, grid.t0 + static_cast<double>(it) * grid.dt);
            cached_it = it;
        }
        const std::size_t rem = idx % plane;
        const std::size_t iy = rem / counts.nx;
        const std::size_t ix = rem % counts.nx;
        out[idx] = score_rotated(rotated,
                                 grid.x0 + static_cast<double>(ix) * grid.dx,
                                 grid.y0 + static_cast<double>(iy) * grid.dy,
                                 field, params).value;
    }
    return out;
}

// ============================================================================
// Coarse-to-fine
// ============================================================================

PyramidLevels prepare_levels(const Pyramid& template_pyr,
                             const Pyramid& working_pyr,
                             const SearchConfig& config) {
    if (config.num_levels < 1) {
        throw InvalidArgument("num_levels must be >= 1");
    }
    const std::size_t levels = static_cast<std::size_t>(config.num_levels);
    if (template_pyr.levels.size() < levels || working_pyr.levels.size() < levels) {
        throw InvalidArgument("pyramids must provide " +
                              std::to_string(config.num_levels) + " levels");
    }
    PyramidLevels out;
    out.models.reserve(levels);
    out.fields.reserve(levels);
    for (std::size_t level = 0; level < levels; ++level) {
        const GradientField tf = compute_gradients(template_pyr.levels[level]);
        const EdgeThresholds th =
            config.thresholds ? *config.thresholds : default_thresholds(tf);
        try {
            out.models.push_back(
                extract_edge_model(tf, th, static_cast<int>(level)));
        } catch (const EmptyModelError& e) {
            throw EmptyModelError(
                "edge model extraction failed at pyramid level " +
                    std::to_string(level) + ": " + e.what(),
                e.max_magnitude());
        }
        out.fields.push_back(compute_gradients(working_pyr.levels[level]));
    }
    return out;
}

namespace {

struct BeamEntry {
    Pose pose;    // in the current level's coordinates
    double score = 0.0;
    std::size_t top_index = 0;
};

inline bool same_pose(const Pose& a, const Pose& b) {
    return a.ux == b.ux && a.uy == b.uy && a.theta == b.theta;
}

}  // namespace

SearchOutcome search_levels(const PyramidLevels& levels,
                            const SearchConfig& config) {
    validate(config.score_params);
    if (config.topk < 1 || config.refine_radius < 1) {
        throw InvalidArgument("topk and refine_radius must be >= 1");
    }
    const int top = config.num_levels - 1;
    if (levels.models.size() < static_cast<std::size_t>(config.num_levels)) {
        throw InvalidArgument("prepared levels do not cover num_levels");
    }
    const double scale = static_cast<double>(1 << top);

    PoseGrid top_grid = config.grid;
    top_grid.x0 /= scale;
    top_grid.x1 /= scale;
    top_grid.dx /= scale;
    top_grid.y0 /= scale;
    top_grid.y1 /= scale;
    top_grid.dy /= scale;
    // theta range and step are scale-invariant

    std::vector<LevelTrace> trace;
    const auto seeds = search_topk(levels.models[top], levels.fields[top],
                                   top_grid, config.score_params,
                                   config.backend, config.topk);
    std::vector<BeamEntry> beam;
    beam.reserve(seeds.size());
    for (const ScoredPose& s : seeds) {
        beam.push_back(BeamEntry{s.pose, s.score, s.grid_index});
    }
    trace.push_back(LevelTrace{top, beam[0].pose, beam[0].score});

    const double theta_floor = deg_to_rad(0.25);
    double step_x = top_grid.dx;
    double step_y = top_grid.dy;
    double step_t = top_grid.dt;
    const int radius = config.refine_radius;

    for (int level = top - 1; level >= 0; --level) {
        step_x /= 2.0;
        step_y /= 2.0;
        step_t = std::max(step_t / 2.0, theta_floor);

        std::vector<BeamEntry> evaluated;
        evaluated.reserve(beam.size() * (2 * radius + 1) * (2 * radius + 1) *
                          (2 * radius + 1));
        for (const BeamEntry& parent : beam) {
            const double cx = parent.pose.ux * 2.0;
            const double cy = parent.pose.uy * 2.0;
            const double ct = parent.pose.theta;
            for (int kt = -radius; kt <= radius; ++kt) {
                const double theta = ct + static_cast<double>(kt) * step_t;
                const RotatedModel rotated =
                    rotate_model(levels.models[level], theta);
                for (int ky = -radius; ky <= radius; ++ky) {
                    for (int kx = -radius; kx <= radius; ++kx) {
                        const Pose p{cx + static_cast<double>(kx) * step_x,
                                     cy + static_cast<double>(ky) * step_y,
                                     theta};
                        const PoseScore s =
                            score_rotated(rotated, p.ux, p.uy,
                                          levels.fields[level],
                                          config.score_params);
                        evaluated.push_back(
                            BeamEntry{p, s.value, parent.top_index});
                    }
                }
            }
        }
        // Stable sort keeps generation order on ties (parents in rank order,
        // local lattice in (theta, y, x) order), then exact duplicates from
        // overlapping windows collapse.
        std::stable_sort(evaluated.begin(), evaluated.end(),
                         [](const BeamEntry& a, const BeamEntry& b) {
                             return a.score > b.score;
                         });
        std::vector<BeamEntry> next;
        for (const BeamEntry& e : evaluated) {
            bool dup = false;
            for (const BeamEntry& kept : next) {
                if (same_pose(kept.pose, e.pose)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                next.push_back(e);
                if (next.size() == static_cast<std::size_t>(config.topk)) {
                    break;
                }
            }
        }
        beam = std::move(next);
        trace.push_back(LevelTrace{level, beam[0].pose, beam[0].score});
    }

    SearchOutcome outcome;
    outcome.best.pose = beam[0].pose;
    outcome.best.score = beam[0].score;
    outcome.best.level_trace = std::move(trace);
    outcome.best.grid_index = beam[0].top_index;
    outcome.found = beam[0].score >= config.min_score;
    return outcome;
}

SearchOutcome coarse_to_fine(const Pyramid& template_pyr,
                             const Pyramid& working_pyr,
                             const SearchConfig& config) {
    return search_levels(prepare_levels(template_pyr, working_pyr, config),
                         config);
}

}  // namespace edgealign
