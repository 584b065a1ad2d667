/**
 * @file similarity.cpp
 * @brief Orientation-consistency scoring with neighborhood-max voting.
 */
#include "edgealign/similarity.h"

#include <cmath>
#include <limits>

#include "edgealign/errors.h"
#include "edgealign/simd/kernels.h"

namespace edgealign {

void validate(const ScoreParams& params) {
    if (params.neighborhood < 1 || params.neighborhood % 2 == 0) {
        throw InvalidArgument("neighborhood must be odd and >= 1, got " +
                              std::to_string(params.neighborhood));
    }
    if (!(params.eps_mag > 0.0)) {
        throw InvalidArgument("eps_mag must be positive");
    }
}

namespace {

// Guard before float->int conversion; anything this far out is off-image.
constexpr double kCoordGuard = 1e9;

inline double vote_at(const simd::Kernels& k, double dir_x, double dir_y,
                      const GradientField& field, int cx, int cy, int radius,
                      double eps_mag, bool absolute) {
    const int x0 = cx - radius < 0 ? 0 : cx - radius;
    const int x1 = cx + radius >= field.width ? field.width - 1 : cx + radius;
    const int y0 = cy - radius < 0 ? 0 : cy - radius;
    const int y1 = cy + radius >= field.height ? field.height - 1 : cy + radius;
    if (x0 > x1 || y0 > y1) {
        return 0.0;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int y = y0; y <= y1; ++y) {
        const std::size_t row = field.index(0, y);
        const double m =
            k.vote_span(field.gx.data() + row, field.gy.data() + row,
                        field.mag.data() + row, x0, x1, dir_x, dir_y, eps_mag,
                        absolute);
        if (m > best) {
            best = m;
        }
    }
    return best;
}

inline int round_half_up(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

}  // namespace

double point_vote(double dir_x, double dir_y, const GradientField& field,
                  int cx, int cy, const ScoreParams& params) {
    validate(params);
    return vote_at(simd::active(), dir_x, dir_y, field, cx, cy,
                   (params.neighborhood - 1) / 2, params.eps_mag,
                   params.polarity == Polarity::Ignore);
}

RotatedModel rotate_model(const EdgeModel& model, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::size_t n = model.points.size();
    RotatedModel out;
    out.px.resize(n);
    out.py.resize(n);
    out.dx.resize(n);
    out.dy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const EdgePoint& p = model.points[i];
        out.px[i] = c * p.x_rel - s * p.y_rel;
        out.py[i] = s * p.x_rel + c * p.y_rel;
        const double rx = c * p.dx - s * p.dy;
        const double ry = s * p.dx + c * p.dy;
        const double norm = std::sqrt(rx * rx + ry * ry);
        out.dx[i] = rx / norm;
        out.dy[i] = ry / norm;
    }
    return out;
}

PoseScore score_rotated(const RotatedModel& rotated, double ux, double uy,
                        const GradientField& field, const ScoreParams& params) {
    const std::size_t n = rotated.px.size();
    if (n == 0) {
        throw InvalidArgument("pose_score needs a nonempty model");
    }
    const auto& k = simd::active();
    const int radius = (params.neighborhood - 1) / 2;
    const bool absolute = params.polarity == Polarity::Ignore;

    double sum = 0.0;
    int inbounds = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double px = rotated.px[i] + ux;
        const double py = rotated.py[i] + uy;
        double vote = 0.0;
        if (px > -kCoordGuard && px < kCoordGuard && py > -kCoordGuard &&
            py < kCoordGuard) {
            const int cx = round_half_up(px);
            const int cy = round_half_up(py);
            if (field.in_bounds(cx, cy)) {
                ++inbounds;
                vote = vote_at(k, rotated.dx[i], rotated.dy[i], field, cx, cy,
                               radius, params.eps_mag, absolute);
            }
        }
        sum += vote;
    }
    return {sum / static_cast<double>(n), inbounds};
}

PoseScore pose_score(const EdgeModel& model, const Pose& pose,
                     const GradientField& field, const ScoreParams& params) {
    validate(params);
    return score_rotated(rotate_model(model, pose.theta), pose.ux, pose.uy,
                         field, params);
}

}  // namespace edgealign
