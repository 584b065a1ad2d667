/**
 * @file test_search.cpp
 * @brief Grid search backends, score maps, and coarse-to-fine refinement.
 */
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "edgealign/search.h"
#include "edgealign/synth.h"
#include "support/reference_score.h"

using namespace edgealign;

namespace {

GradientField random_field(std::mt19937& rng, int w, int h) {
    std::uniform_int_distribution<int> val(0, 255);
    Image img(w, h);
    for (double& v : img.data) {
        v = static_cast<double>(val(rng));
    }
    return compute_gradients(img);
}

EdgeModel random_model(std::mt19937& rng, int size) {
    std::uniform_int_distribution<int> val(0, 255);
    Image img(size, size);
    for (double& v : img.data) {
        v = static_cast<double>(val(rng));
    }
    const GradientField f = compute_gradients(img);
    return extract_edge_model(f, {0.0, 0.0}, 0);
}

}  // namespace

TEST_CASE("single-pose grid returns that pose and its score") {
    std::mt19937 rng(53);
    const EdgeModel model = random_model(rng, 10);
    const GradientField f = random_field(rng, 32, 32);
    const PoseGrid grid{16, 16, 1, 12, 12, 1, 0.2, 0.2, 0.1};
    const ScoreParams params{3};
    const Detection det = exhaustive_search(model, f, grid, params, Backend{});
    CHECK(det.grid_index == 0u);
    CHECK(det.pose.ux == 16.0);
    CHECK(det.pose.uy == 12.0);
    CHECK(det.pose.theta == 0.2);
    CHECK(det.score ==
          pose_score(model, det.pose, f, params).value);
}

TEST_CASE("exhaustive_search agrees with the brute-force reference") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 4; ++trial) {
        const EdgeModel model = random_model(rng, 8 + 2 * trial);
        const GradientField f = random_field(rng, 32, 32);
        const PoseGrid grid{4, 27, 1, 4, 27, 1, 0.0, deg_to_rad(30),
                            deg_to_rad(15)};
        const ScoreParams params{(trial % 2) ? 1 : 3};
        const auto ref = testref::reference_grid_argmax(
            model, f, grid, params.neighborhood,
            params.polarity == Polarity::Ignore, params.eps_mag);
        const Detection det =
            exhaustive_search(model, f, grid, params, Backend{});
        CHECK(det.grid_index == ref.index);
        CHECK(std::fabs(det.score - ref.score) <= 1e-9);
    }
}

TEST_CASE("serial and parallel backends return bit-equal results") {
    std::mt19937 rng(61);
    const EdgeModel model = random_model(rng, 12);
    const GradientField f = random_field(rng, 40, 40);
    const PoseGrid grid{0, 39, 1, 0, 39, 1, 0.0, deg_to_rad(20), deg_to_rad(10)};
    const ScoreParams params{3};
    const Detection serial =
        exhaustive_search(model, f, grid, params, Backend{});
    for (const int workers : {2, 3, 4, 0}) {
        const Detection parallel = exhaustive_search(
            model, f, grid, params,
            Backend{BackendKind::Parallel, workers});
        CHECK(std::memcmp(&serial.score, &parallel.score, sizeof(double)) == 0);
        CHECK(serial.grid_index == parallel.grid_index);
    }

    const auto topk_serial = search_topk(model, f, grid, params, Backend{}, 5);
    const auto topk_parallel = search_topk(
        model, f, grid, params, Backend{BackendKind::Parallel, 3}, 5);
    REQUIRE(topk_serial.size() == topk_parallel.size());
    for (std::size_t i = 0; i < topk_serial.size(); ++i) {
        CHECK(topk_serial[i].grid_index == topk_parallel[i].grid_index);
        CHECK(std::memcmp(&topk_serial[i].score, &topk_parallel[i].score,
                          sizeof(double)) == 0);
    }
}

TEST_CASE("score_map is definitionally consistent with exhaustive_search") {
    std::mt19937 rng(67);
    const EdgeModel model = random_model(rng, 10);
    const GradientField f = random_field(rng, 30, 30);
    const PoseGrid grid{5, 24, 1, 5, 24, 1, 0.0, deg_to_rad(10), deg_to_rad(5)};
    const ScoreParams params{3};
    const auto map = score_map(model, f, grid, params, 1u << 20);
    REQUIRE(map.size() == grid_size(grid));

    const Detection det = exhaustive_search(model, f, grid, params, Backend{});
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < map.size(); ++i) {
        if (map[i] > map[argmax]) {
            argmax = i;
        }
    }
    CHECK(argmax == det.grid_index);
    CHECK(map[argmax] == det.score);

    const PoseGrid one{7, 7, 1, 7, 7, 1, 0.1, 0.1, 1.0};
    const auto single = score_map(model, f, one, params, 16);
    REQUIRE(single.size() == 1u);
    CHECK(single[0] == pose_score(model, Pose{7, 7, 0.1}, f, params).value);
}

TEST_CASE("score_map refuses when the budget is too small") {
    std::mt19937 rng(71);
    const EdgeModel model = random_model(rng, 10);
    const GradientField f = random_field(rng, 30, 30);
    const PoseGrid grid{0, 29, 1, 0, 29, 1, 0.0, 0.0, 1.0};
    try {
        score_map(model, f, grid, ScoreParams{1}, 100);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("900") != std::string::npos);
        CHECK(std::string(e.what()).find("100") != std::string::npos);
    }
}

TEST_CASE("synthetic scene: target pasted on a lattice pose is found") {
    SceneSpec spec;
    spec.canvas_width = 128;
    spec.canvas_height = 128;
    spec.template_id = TemplateId::Rectangle;
    spec.template_size = 40;
    spec.true_pose = Pose{64, 56, 0.0};
    const auto [scene, truth] = compose_scene(spec);

    const GradientField tf = compute_gradients(truth.template_image);
    const EdgeModel model =
        extract_edge_model(tf, default_thresholds(tf), 0);
    const GradientField wf = compute_gradients(scene);
    const PoseGrid grid{24, 104, 2, 24, 104, 2, 0.0, 0.0, 1.0};
    const Detection det =
        exhaustive_search(model, wf, grid, ScoreParams{3}, Backend{});
    CHECK(det.pose.ux == 64.0);
    CHECK(det.pose.uy == 56.0);
    CHECK(det.score >= 0.95);
    CHECK(det.score ==
          pose_score(model, det.pose, wf, ScoreParams{3}).value);
}

TEST_CASE("coarse_to_fine with one level gates exhaustive_search on min_score") {
    SceneSpec spec;
    spec.canvas_width = 96;
    spec.canvas_height = 96;
    spec.template_id = TemplateId::Cross;
    spec.template_size = 32;
    spec.true_pose = Pose{48, 48, 0.0};
    const auto [scene, truth] = compose_scene(spec);

    SearchConfig config;
    config.grid = PoseGrid{24, 72, 2, 24, 72, 2, 0.0, 0.0, 1.0};
    config.num_levels = 1;
    config.score_params = ScoreParams{3};

    const Pyramid tp = build_pyramid(truth.template_image, 1);
    const Pyramid wp = build_pyramid(scene, 1);
    const SearchOutcome out = coarse_to_fine(tp, wp, config);
    CHECK(out.found);

    const GradientField tf = compute_gradients(truth.template_image);
    const EdgeModel model = extract_edge_model(tf, default_thresholds(tf), 0);
    const GradientField wf = compute_gradients(scene);
    const Detection det = exhaustive_search(model, wf, config.grid,
                                            config.score_params, Backend{});
    CHECK(out.best.score == det.score);
    CHECK(out.best.grid_index == det.grid_index);
    CHECK(out.best.pose.ux == det.pose.ux);
    CHECK(out.best.pose.uy == det.pose.uy);
}

TEST_CASE("coarse_to_fine recovers an off-grid pose within the final step") {
    SceneSpec spec;
    spec.canvas_width = 256;
    spec.canvas_height = 256;
    spec.template_id = TemplateId::Rectangle;
    spec.template_size = 64;
    spec.true_pose = Pose{100, 60, deg_to_rad(30)};
    const auto [scene, truth] = compose_scene(spec);

    SearchConfig config;
    config.grid = PoseGrid{40, 216, 8, 40, 216, 8, 0.0, deg_to_rad(88),
                           deg_to_rad(4)};
    config.num_levels = 2;
    config.score_params = ScoreParams{3};
    config.min_score = 0.4;

    const Pyramid tp = build_pyramid(truth.template_image, 2);
    const Pyramid wp = build_pyramid(scene, 2);
    const SearchOutcome out = coarse_to_fine(tp, wp, config);
    REQUIRE(out.found);
    CHECK(std::fabs(out.best.pose.ux - 100.0) <= 1.0 + 1e-9);
    CHECK(std::fabs(out.best.pose.uy - 60.0) <= 1.0 + 1e-9);
    CHECK(std::fabs(rad_to_deg(out.best.pose.theta) - 30.0) <= 1.0 + 1e-9);

    // trace runs coarse to fine and ends at level 0
    REQUIRE(out.best.level_trace.size() == 2u);
    CHECK(out.best.level_trace[0].level == 1);
    CHECK(out.best.level_trace[1].level == 0);
}

TEST_CASE("coarse_to_fine reports no-detection on a flat scene") {
    const Image flat(96, 96, 180.0);
    const Image tmpl = render_template(TemplateId::Rectangle, 32);
    SearchConfig config;
    config.grid = PoseGrid{16, 80, 4, 16, 80, 4, 0.0, 0.0, 1.0};
    config.num_levels = 2;
    config.score_params = ScoreParams{3};

    const SearchOutcome out = coarse_to_fine(build_pyramid(tmpl, 2),
                                             build_pyramid(flat, 2), config);
    CHECK(!out.found);
    CHECK(out.best.score < config.min_score);
}

TEST_CASE("increasing topk never lowers the final score") {
    SceneSpec spec;
    spec.canvas_width = 160;
    spec.canvas_height = 160;
    spec.template_id = TemplateId::LBracket;
    spec.template_size = 48;
    spec.true_pose = Pose{80, 76, deg_to_rad(22)};
    spec.clutter_segments = 14;
    spec.clutter_seed = 99;
    const auto [scene, truth] = compose_scene(spec);

    SearchConfig config;
    config.grid = PoseGrid{40, 120, 6, 40, 120, 6, 0.0, deg_to_rad(45),
                           deg_to_rad(5)};
    config.num_levels = 2;
    config.score_params = ScoreParams{3};
    const Pyramid tp = build_pyramid(truth.template_image, 2);
    const Pyramid wp = build_pyramid(scene, 2);

    double prev = -2.0;
    for (const int topk : {1, 3, 6}) {
        config.topk = topk;
        const SearchOutcome out = coarse_to_fine(tp, wp, config);
        CHECK(out.best.score >= prev);
        prev = out.best.score;
    }
}

TEST_CASE("prepare_levels propagates extraction failures with the level index") {
    const Image flat_template(64, 64, 127.0);
    const Image scene(64, 64, 127.0);
    SearchConfig config;
    config.grid = PoseGrid{0, 63, 4, 0, 63, 4, 0.0, 0.0, 1.0};
    config.num_levels = 2;
    try {
        prepare_levels(build_pyramid(flat_template, 2), build_pyramid(scene, 2),
                       config);
        FAIL("expected EmptyModelError");
    } catch (const EmptyModelError& e) {
        CHECK(std::string(e.what()).find("level 0") != std::string::npos);
    }
}
