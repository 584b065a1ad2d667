/**
 * @file synth.h
 * @brief Deterministic, seeded generator of templates and working scenes with
 *        ground-truth poses, occlusion, clutter, and illumination transforms.
 *
 * Randomness comes from SplitMix64 (constants 0x9E3779B97F4A7C15,
 * 0xBF58476D1CE4E5B9, 0x94D049BB133111EB; shifts 30/27/31). Uniform doubles
 * take the top 53 bits of a draw; normals come from Box-Muller on two
 * uniforms. Equal specs therefore produce bit-identical scenes on any
 * platform with IEEE doubles and a correctly rounded sqrt/log/cos path.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "edgealign/image.h"
#include "edgealign/pose.h"

namespace edgealign {

/// Deterministic 64-bit generator (SplitMix64).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws two uniforms per pair.
    double normal();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class TemplateId { Rectangle, Ring, LBracket, Cross };

const char* template_id_name(TemplateId id);
TemplateId template_id_from_name(std::string_view name);  // throws InvalidArgument

struct OccluderSpec {
    int x = 0, y = 0, w = 0, h = 0;
    double fill = 0.0;
};

struct IlluminationSpec {
    double gain = 1.0;   // > 0
    double bias = 0.0;
    double gamma = 1.0;  // > 0
};

struct SceneSpec {
    int canvas_width = 0;
    int canvas_height = 0;
    TemplateId template_id = TemplateId::Rectangle;
    int template_size = 0;
    Pose true_pose;  // theta in radians; serialized in degrees
    int clutter_segments = 0;
    std::uint64_t clutter_seed = 0;
    std::optional<OccluderSpec> occluder;
    IlluminationSpec illumination;
    double noise_sigma = 0.0;
    std::uint64_t noise_seed = 0;
};

struct GroundTruth {
    Pose pose;
    double occluded_fraction = 0.0;  // fraction of template edge points covered
    Image template_image;
};

/// Dark strokes (40) on light ground (200), 2-pixel stroke width, hard edges.
/// Requires size >= 16; throws InvalidArgument on unknown id or SizeError on
/// too-small size.
Image render_template(TemplateId id, int size);

/// Compose ground -> clutter -> template stamp -> occluder -> illumination ->
/// noise. The stamp maps the template's edge centroid to the pose translation
/// (nearest-neighbor resampling, shape pixels only), so GroundTruth.pose is
/// directly comparable with a detector's reported pose. Throws GeometryError
/// if the transformed template leaves the canvas.
std::pair<Image, GroundTruth> compose_scene(const SceneSpec& spec);

/// JSON document with exactly the spec field names; see README for the schema.
std::string scene_spec_to_json(const SceneSpec& spec);
SceneSpec scene_spec_from_json(const std::string& text);
SceneSpec load_scene_spec_file(const std::string& path);

std::string ground_truth_to_json(const GroundTruth& truth);
GroundTruth ground_truth_from_json(const std::string& text);

}  // namespace edgealign
