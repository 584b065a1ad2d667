/**
 * @file synth.cpp
 * @brief Seeded synthetic templates and scenes with ground truth.
 */
#include "edgealign/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "edgealign/edge_model.h"
#include "edgealign/errors.h"
#include "edgealign/gradient.h"

namespace edgealign {

namespace {
constexpr double kGround = 200.0;
constexpr double kStroke = 40.0;
}  // namespace

double SplitMix64::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 shifted away from 0 so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

const char* template_id_name(TemplateId id) {
    switch (id) {
        case TemplateId::Rectangle: return "rectangle";
        case TemplateId::Ring: return "ring";
        case TemplateId::LBracket: return "l_bracket";
        case TemplateId::Cross: return "cross";
    }
    return "unknown";
}

TemplateId template_id_from_name(std::string_view name) {
    if (name == "rectangle") return TemplateId::Rectangle;
    if (name == "ring") return TemplateId::Ring;
    if (name == "l_bracket") return TemplateId::LBracket;
    if (name == "cross") return TemplateId::Cross;
    throw InvalidArgument("unknown template id \"" + std::string(name) +
                          "\" (expected rectangle|ring|l_bracket|cross)");
}

// ============================================================================
// Template rendering
// ============================================================================

Image render_template(TemplateId id, int size) {
    if (size < 16) {
        throw SizeError("template size must be >= 16, got " +
                        std::to_string(size));
    }
    Image img(size, size, kGround);
    const int margin = std::max(2, size / 8);
    const int lo = margin;
    const int hi = size - 1 - margin;

    auto stroke_at = [&](int x, int y) { img.at(x, y) = kStroke; };

    switch (id) {
        case TemplateId::Rectangle: {
            for (int x = lo; x <= hi; ++x) {
                for (int t = 0; t < 2; ++t) {
                    stroke_at(x, lo + t);
                    stroke_at(x, hi - t);
                }
            }
            for (int y = lo; y <= hi; ++y) {
                for (int t = 0; t < 2; ++t) {
                    stroke_at(lo + t, y);
                    stroke_at(hi - t, y);
                }
            }
            break;
        }
        case TemplateId::Ring: {
            const double c = (size - 1) / 2.0;
            const double radius = (hi - lo) / 2.0;
            for (int y = 0; y < size; ++y) {
                for (int x = 0; x < size; ++x) {
                    const double d = std::hypot(x - c, y - c);
                    if (std::fabs(d - radius) <= 1.0) {
                        stroke_at(x, y);
                    }
                }
            }
            break;
        }
        case TemplateId::LBracket: {
            for (int y = lo; y <= hi; ++y) {
                stroke_at(lo, y);
                stroke_at(lo + 1, y);
            }
            for (int x = lo; x <= hi; ++x) {
                stroke_at(x, hi);
                stroke_at(x, hi - 1);
            }
            break;
        }
        case TemplateId::Cross: {
            const int c = size / 2;
            for (int y = lo; y <= hi; ++y) {
                stroke_at(c - 1, y);
                stroke_at(c, y);
            }
            for (int x = lo; x <= hi; ++x) {
                stroke_at(x, c - 1);
                stroke_at(x, c);
            }
            break;
        }
    }
    return img;
}

// ============================================================================
// Scene composition
// ============================================================================

namespace {

inline int round_half_up(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

void draw_clutter(Image& canvas, int segments, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (int s = 0; s < segments; ++s) {
        const double x0 = rng.uniform01() * canvas.width;
        const double y0 = rng.uniform01() * canvas.height;
        const double x1 = rng.uniform01() * canvas.width;
        const double y1 = rng.uniform01() * canvas.height;
        const double value = rng.uniform01() * 255.0;
        const int width = 1 + static_cast<int>(rng.next() & 1ULL);

        const double len = std::hypot(x1 - x0, y1 - y0);
        const int steps = 1 + static_cast<int>(2.0 * len);
        for (int i = 0; i <= steps; ++i) {
            const double t = static_cast<double>(i) / steps;
            const int px = round_half_up(x0 + t * (x1 - x0));
            const int py = round_half_up(y0 + t * (y1 - y0));
            for (int dy = 0; dy < width; ++dy) {
                for (int dx = 0; dx < width; ++dx) {
                    if (canvas.in_bounds(px + dx, py + dy)) {
                        canvas.at(px + dx, py + dy) = value;
                    }
                }
            }
        }
    }
}

/// Edge centroid of the template, from the same pipeline a detector runs, so
/// the stamped pose means the same thing the detector reports.
std::pair<double, double> template_edge_centroid(const Image& tmpl) {
    const GradientField field = compute_gradients(tmpl);
    const EdgeModel model =
        extract_edge_model(field, default_thresholds(field), 0);
    return {model.centroid_x, model.centroid_y};
}

}  // namespace

std::pair<Image, GroundTruth> compose_scene(const SceneSpec& spec) {
    if (spec.canvas_width < 16 || spec.canvas_height < 16) {
        throw InvalidArgument("canvas must be at least 16x16");
    }
    if (!(spec.illumination.gain > 0.0) || !(spec.illumination.gamma > 0.0)) {
        throw InvalidArgument("illumination gain and gamma must be positive");
    }
    if (spec.noise_sigma < 0.0) {
        throw InvalidArgument("noise_sigma must be >= 0");
    }

    const Image tmpl = render_template(spec.template_id, spec.template_size);
    const auto [cref_x, cref_y] = template_edge_centroid(tmpl);
    const Pose& pose = spec.true_pose;

    // The transformed template bounding box must stay on the canvas.
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    const double corners[4][2] = {
        {0.0, 0.0},
        {static_cast<double>(tmpl.width - 1), 0.0},
        {0.0, static_cast<double>(tmpl.height - 1)},
        {static_cast<double>(tmpl.width - 1), static_cast<double>(tmpl.height - 1)}};
    for (const auto& corner : corners) {
        const auto [px, py] =
            transform_point(pose, corner[0] - cref_x, corner[1] - cref_y);
        min_x = std::min(min_x, px);
        max_x = std::max(max_x, px);
        min_y = std::min(min_y, py);
        max_y = std::max(max_y, py);
    }
    if (min_x < 0.0 || min_y < 0.0 || max_x > spec.canvas_width - 1.0 ||
        max_y > spec.canvas_height - 1.0) {
        throw GeometryError("transformed template leaves the canvas (bbox [" +
                            std::to_string(min_x) + ", " + std::to_string(min_y) +
                            "] .. [" + std::to_string(max_x) + ", " +
                            std::to_string(max_y) + "])");
    }

    Image canvas(spec.canvas_width, spec.canvas_height, kGround);
    draw_clutter(canvas, spec.clutter_segments, spec.clutter_seed);

    // Stamp by inverse mapping with nearest-neighbor lookup; only shape
    // pixels land, ground stays transparent. The template-space lookup rounds
    // ties half-DOWN, the exact inverse of the half-up rounding the scorer
    // applies to forward projections, so a stamped pixel sits where a model
    // point projects.
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    const int bx0 = std::max(0, static_cast<int>(std::floor(min_x)) - 1);
    const int by0 = std::max(0, static_cast<int>(std::floor(min_y)) - 1);
    const int bx1 = std::min(spec.canvas_width - 1,
                             static_cast<int>(std::ceil(max_x)) + 1);
    const int by1 = std::min(spec.canvas_height - 1,
                             static_cast<int>(std::ceil(max_y)) + 1);
    for (int y = by0; y <= by1; ++y) {
        for (int x = bx0; x <= bx1; ++x) {
            const double rx = x - pose.ux;
            const double ry = y - pose.uy;
            const double tx = (c * rx + s * ry) + cref_x;
            const double ty = (-s * rx + c * ry) + cref_y;
            const int ix = static_cast<int>(std::ceil(tx - 0.5));
            const int iy = static_cast<int>(std::ceil(ty - 0.5));
            if (tmpl.in_bounds(ix, iy) && tmpl.at(ix, iy) != kGround) {
                canvas.at(x, y) = tmpl.at(ix, iy);
            }
        }
    }

    if (spec.occluder) {
        const OccluderSpec& occ = *spec.occluder;
        const int ox0 = std::max(0, occ.x);
        const int oy0 = std::max(0, occ.y);
        const int ox1 = std::min(spec.canvas_width - 1, occ.x + occ.w - 1);
        const int oy1 = std::min(spec.canvas_height - 1, occ.y + occ.h - 1);
        for (int y = oy0; y <= oy1; ++y) {
            for (int x = ox0; x <= ox1; ++x) {
                canvas.at(x, y) = occ.fill;
            }
        }
    }

    // Illumination: gamma map first into the gain-1/bias-0 value, then the
    // affine part, so a (gain, bias) scene is exactly gain*v + bias of the
    // (1, 0) scene pixel for pixel.
    const double gain = spec.illumination.gain;
    const double bias = spec.illumination.bias;
    const double gamma = spec.illumination.gamma;
    for (double& v : canvas.data) {
        const double base =
            (gamma == 1.0) ? v : 255.0 * std::pow(v / 255.0, gamma);
        v = gain * base + bias;
    }

    if (spec.noise_sigma > 0.0) {
        SplitMix64 rng(spec.noise_seed);
        for (double& v : canvas.data) {
            v += spec.noise_sigma * rng.normal();
        }
    }

    GroundTruth truth;
    truth.pose = pose;
    truth.template_image = tmpl;
    if (spec.occluder) {
        const GradientField tf = compute_gradients(tmpl);
        const EdgeModel model =
            extract_edge_model(tf, default_thresholds(tf), 0);
        const OccluderSpec& occ = *spec.occluder;
        int covered = 0;
        for (const EdgePoint& p : model.points) {
            const auto [px, py] = transform_point(pose, p.x_rel, p.y_rel);
            const int ix = round_half_up(px);
            const int iy = round_half_up(py);
            if (ix >= occ.x && ix < occ.x + occ.w && iy >= occ.y &&
                iy < occ.y + occ.h) {
                ++covered;
            }
        }
        truth.occluded_fraction =
            static_cast<double>(covered) / static_cast<double>(model.points.size());
    }
    return {std::move(canvas), std::move(truth)};
}

// ============================================================================
// JSON
// ============================================================================

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json pose_to_json(const Pose& pose) {
    return ordered_json{{"x", pose.ux},
                        {"y", pose.uy},
                        {"theta_deg", rad_to_deg(pose.theta)}};
}

Pose pose_from_json(const ordered_json& j) {
    return Pose{j.at("x").get<double>(), j.at("y").get<double>(),
                deg_to_rad(j.at("theta_deg").get<double>())};
}

}  // namespace

std::string scene_spec_to_json(const SceneSpec& spec) {
    ordered_json j;
    j["canvas"] = ordered_json{{"width", spec.canvas_width},
                               {"height", spec.canvas_height}};
    j["template_id"] = template_id_name(spec.template_id);
    j["template_size"] = spec.template_size;
    j["true_pose"] = pose_to_json(spec.true_pose);
    j["clutter_segments"] = spec.clutter_segments;
    j["clutter_seed"] = spec.clutter_seed;
    if (spec.occluder) {
        j["occluder"] = ordered_json{{"x", spec.occluder->x},
                                     {"y", spec.occluder->y},
                                     {"w", spec.occluder->w},
                                     {"h", spec.occluder->h},
                                     {"fill", spec.occluder->fill}};
    } else {
        j["occluder"] = nullptr;
    }
    j["illumination"] = ordered_json{{"gain", spec.illumination.gain},
                                     {"bias", spec.illumination.bias},
                                     {"gamma", spec.illumination.gamma}};
    j["noise_sigma"] = spec.noise_sigma;
    j["noise_seed"] = spec.noise_seed;
    return j.dump(2);
}

SceneSpec scene_spec_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scene spec is not valid JSON: ") + e.what(),
                         e.byte);
    }
    try {
        SceneSpec spec;
        spec.canvas_width = j.at("canvas").at("width").get<int>();
        spec.canvas_height = j.at("canvas").at("height").get<int>();
        spec.template_id =
            template_id_from_name(j.at("template_id").get<std::string>());
        spec.template_size = j.at("template_size").get<int>();
        spec.true_pose = pose_from_json(j.at("true_pose"));
        spec.clutter_segments = j.at("clutter_segments").get<int>();
        spec.clutter_seed = j.at("clutter_seed").get<std::uint64_t>();
        if (j.contains("occluder") && !j.at("occluder").is_null()) {
            const auto& o = j.at("occluder");
            spec.occluder = OccluderSpec{
                o.at("x").get<int>(), o.at("y").get<int>(), o.at("w").get<int>(),
                o.at("h").get<int>(), o.at("fill").get<double>()};
        }
        const auto& il = j.at("illumination");
        spec.illumination = IlluminationSpec{il.at("gain").get<double>(),
                                             il.at("bias").get<double>(),
                                             il.at("gamma").get<double>()};
        spec.noise_sigma = j.at("noise_sigma").get<double>();
        spec.noise_seed = j.at("noise_seed").get<std::uint64_t>();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("scene spec missing or mistyped field: ") +
                              e.what());
    }
}

SceneSpec load_scene_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path);
    }
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    return scene_spec_from_json(text);
}

std::string ground_truth_to_json(const GroundTruth& truth) {
    ordered_json j;
    j["pose"] = pose_to_json(truth.pose);
    j["occluded_fraction"] = truth.occluded_fraction;
    j["template"] = ordered_json{{"width", truth.template_image.width},
                                 {"height", truth.template_image.height},
                                 {"data", truth.template_image.data}};
    return j.dump(2);
}

GroundTruth ground_truth_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("ground truth is not valid JSON: ") + e.what(),
                         e.byte);
    }
    try {
        GroundTruth truth;
        truth.pose = pose_from_json(j.at("pose"));
        truth.occluded_fraction = j.at("occluded_fraction").get<double>();
        const auto& t = j.at("template");
        Image img(t.at("width").get<int>(), t.at("height").get<int>());
        img.data = t.at("data").get<std::vector<double>>();
        if (img.data.size() !=
            static_cast<std::size_t>(img.width) * img.height) {
            throw InvalidArgument("ground truth template data length mismatch");
        }
        truth.template_image = std::move(img);
        return truth;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("ground truth missing or mistyped field: ") +
                              e.what());
    }
}

}  // namespace edgealign
