/**
 * @file test_pose.cpp
 * @brief Rigid transform and pose-grid enumeration.
 */
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "edgealign/pose.h"

using namespace edgealign;

TEST_CASE("transform_point basics") {
    CHECK(transform_point(Pose{0, 0, 0}, 3.0, -2.0) ==
          std::pair<double, double>{3.0, -2.0});

    const auto [x1, y1] = transform_point(Pose{0, 0, kPi / 2}, 1.0, 0.0);
    CHECK(x1 == doctest::Approx(0.0).epsilon(0.0).scale(1.0));
    CHECK(y1 == doctest::Approx(1.0));

    const auto [x2, y2] = transform_point(Pose{5, 7, kPi / 2}, 1.0, 0.0);
    CHECK(x2 == doctest::Approx(5.0));
    CHECK(y2 == doctest::Approx(8.0));
}

TEST_CASE("theta = 0 transforms are pure translations") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> val(-100.0, 100.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Pose pose{val(rng), val(rng), 0.0};
        const double tx = val(rng), ty = val(rng);
        const auto [px, py] = transform_point(pose, tx, ty);
        CHECK(px == tx + pose.ux);
        CHECK(py == ty + pose.uy);
    }
}

TEST_CASE("rotate_direction basics") {
    const auto [a, b] = rotate_direction(Pose{9, 9, 0.0}, 1.0, 0.0);
    CHECK(a == doctest::Approx(1.0));
    CHECK(b == doctest::Approx(0.0).scale(1.0));

    const auto [c, d] = rotate_direction(Pose{0, 0, kPi / 2}, 1.0, 0.0);
    CHECK(c == doctest::Approx(0.0).scale(1.0));
    CHECK(d == doctest::Approx(1.0));

    const auto [e, f] = rotate_direction(Pose{0, 0, kPi}, 0.6, 0.8);
    CHECK(e == doctest::Approx(-0.6));
    CHECK(f == doctest::Approx(-0.8));
}

TEST_CASE("rotate_direction stays unit-norm") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = angle(rng);
        const auto [dx, dy] = rotate_direction(Pose{0, 0, angle(rng)},
                                               std::cos(a), std::sin(a));
        CHECK(std::fabs(std::sqrt(dx * dx + dy * dy) - 1.0) <= 1e-9);
    }
}

TEST_CASE("transforms are isometries") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> val(-50.0, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Pose pose{val(rng), val(rng), val(rng)};
        const double ax = val(rng), ay = val(rng), bx = val(rng), by = val(rng);
        const auto [pax, pay] = transform_point(pose, ax, ay);
        const auto [pbx, pby] = transform_point(pose, bx, by);
        const double before = std::hypot(bx - ax, by - ay);
        const double after = std::hypot(pbx - pax, pby - pay);
        CHECK(std::fabs(before - after) <= 1e-9 * (1.0 + before));
    }
}

TEST_CASE("grid_size matches the count formula") {
    // paper-scale default ranges
    const PoseGrid paper{0, 812, 3, 0, 615, 3, 0, deg_to_rad(87), deg_to_rad(3)};
    CHECK(grid_size(paper) == 1674780u);
    const GridCounts c = grid_counts(paper);
    CHECK(c.nx == 271u);
    CHECK(c.ny == 206u);
    CHECK(c.nt == 30u);

    const PoseGrid single{4, 4, 1, 5, 5, 1, 0.2, 0.2, 0.1};
    CHECK(grid_size(single) == 1u);

    const PoseGrid tiny{0, 4, 2, 1, 1, 1, 0, 0, 1};
    CHECK(grid_size(tiny) == 3u);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(grid_size(PoseGrid{0, 1, 0.0, 0, 1, 1, 0, 1, 1}),
                    InvalidArgument);
    CHECK_THROWS_AS(grid_size(PoseGrid{2, 1, 1, 0, 1, 1, 0, 1, 1}),
                    InvalidArgument);
}

TEST_CASE("pose_at walks theta slowest, then y, then x") {
    const PoseGrid g{10, 14, 2, 20, 26, 3, 0.5, 0.9, 0.2};
    const GridCounts c = grid_counts(g);
    REQUIRE(c.nx == 3u);
    REQUIRE(c.ny == 3u);
    REQUIRE(c.nt == 3u);

    const Pose first = pose_at(g, 0);
    CHECK(first.ux == 10.0);
    CHECK(first.uy == 20.0);
    CHECK(first.theta == 0.5);

    const Pose bump_y = pose_at(g, c.nx);
    CHECK(bump_y.ux == 10.0);
    CHECK(bump_y.uy == 23.0);
    CHECK(bump_y.theta == 0.5);

    const Pose last = pose_at(g, grid_size(g) - 1);
    CHECK(last.ux == 14.0);
    CHECK(last.uy == 26.0);
    CHECK(last.theta == doctest::Approx(0.9));

    CHECK_THROWS_AS(pose_at(g, grid_size(g)), BoundsError);
}

TEST_CASE("pose_at enumerates each lattice pose exactly once") {
    const PoseGrid g{-3, 3, 1.5, 0, 4, 2, 0, deg_to_rad(30), deg_to_rad(15)};
    std::set<std::tuple<double, double, double>> seen;
    const std::size_t total = grid_size(g);
    for (std::size_t i = 0; i < total; ++i) {
        const Pose p = pose_at(g, i);
        seen.emplace(p.ux, p.uy, p.theta);
    }
    CHECK(seen.size() == total);
}
