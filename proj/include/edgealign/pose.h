/**
 * @file pose.h
 * @brief Rigid 2D pose, the position/direction transforms, and deterministic
 *        pose-grid enumeration.
 *
 * The rotation convention is x right, y down, theta counterclockwise in that
 * frame:  p = R(theta) * t + u  with  R = [cos -sin; sin cos].  A flipped y
 * axis only reflects theta. Angles are radians everywhere inside the library;
 * external interfaces speak degrees.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "edgealign/errors.h"

namespace edgealign {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// A rigid transform hypothesis: translation in pixels, rotation in radians.
struct Pose {
    double ux = 0.0;
    double uy = 0.0;
    double theta = 0.0;
};

/// Discrete pose lattice. Per-axis sample count is floor((end-start)/step)+1.
struct PoseGrid {
    double x0 = 0.0, x1 = 0.0, dx = 1.0;
    double y0 = 0.0, y1 = 0.0, dy = 1.0;
    double t0 = 0.0, t1 = 0.0, dt = 1.0;
};

struct GridCounts {
    std::size_t nx = 0, ny = 0, nt = 0;
};

namespace detail {
inline std::size_t axis_count(double lo, double hi, double step) {
    // floor((hi-lo)/step)+1; the small bias keeps exact multiples from being
    // lost to division rounding.
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}
}  // namespace detail

inline GridCounts grid_counts(const PoseGrid& g) {
    if (!(std::isfinite(g.x0) && std::isfinite(g.x1) && std::isfinite(g.dx) &&
          std::isfinite(g.y0) && std::isfinite(g.y1) && std::isfinite(g.dy) &&
          std::isfinite(g.t0) && std::isfinite(g.t1) && std::isfinite(g.dt))) {
        throw InvalidArgument("pose grid has non-finite bounds");
    }
    if (g.dx <= 0.0 || g.dy <= 0.0 || g.dt <= 0.0) {
        throw InvalidArgument("pose grid steps must be positive");
    }
    if (g.x0 > g.x1 || g.y0 > g.y1 || g.t0 > g.t1) {
        throw InvalidArgument("pose grid range start exceeds end");
    }
    return {detail::axis_count(g.x0, g.x1, g.dx),
            detail::axis_count(g.y0, g.y1, g.dy),
            detail::axis_count(g.t0, g.t1, g.dt)};
}

inline std::size_t grid_size(const PoseGrid& g) {
    const GridCounts c = grid_counts(g);
    return c.nx * c.ny * c.nt;
}

/// Lexicographic linearization, theta slowest, then y, then x fastest. The
/// exact expressions below (including evaluation order) are what every search
/// path uses, so enumeration is reproducible bit for bit.
inline Pose pose_at(const PoseGrid& g, std::size_t index) {
    const GridCounts c = grid_counts(g);
    const std::size_t total = c.nx * c.ny * c.nt;
    if (index >= total) {
        throw BoundsError("pose index " + std::to_string(index) +
                          " out of range (grid size " + std::to_string(total) + ")");
    }
    const std::size_t plane = c.nx * c.ny;
    const std::size_t it = index / plane;
    const std::size_t rem = index % plane;
    const std::size_t iy = rem / c.nx;
    const std::size_t ix = rem % c.nx;
    return {g.x0 + static_cast<double>(ix) * g.dx,
            g.y0 + static_cast<double>(iy) * g.dy,
            g.t0 + static_cast<double>(it) * g.dt};
}

/// p = R(theta) * t + u. Fixed operation order:
/// px = (cos*tx - sin*ty) + ux, py = (sin*tx + cos*ty) + uy.
inline std::pair<double, double> transform_point(const Pose& pose, double tx,
                                                 double ty) {
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    return {(c * tx - s * ty) + pose.ux, (s * tx + c * ty) + pose.uy};
}

/// Rotate a unit direction by the pose rotation (translation ignored) and
/// renormalize to unit length.
inline std::pair<double, double> rotate_direction(const Pose& pose, double dx,
                                                  double dy) {
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    const double rx = c * dx - s * dy;
    const double ry = s * dx + c * dy;
    const double norm = std::sqrt(rx * rx + ry * ry);
    return {rx / norm, ry / norm};
}

}  // namespace edgealign
