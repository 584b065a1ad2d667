/**
 * @file image.h
 * @brief Grayscale raster, PGM/PPM I/O, downsampling and pyramid construction.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "edgealign/errors.h"

namespace edgealign {

/// Row-major grayscale raster. Luminance is real-valued with nominal range
/// [0, 255]; intermediate processing (illumination transforms, noise) may
/// leave values outside that range, so nothing clamps until export.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height, row-major

    Image() = default;
    Image(int w, int h, double fill = 0.0);

    double& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    double at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    const double* row(int y) const {
        return data.data() + static_cast<std::size_t>(y) * width;
    }
    double* row(int y) {
        return data.data() + static_cast<std::size_t>(y) * width;
    }
};

/// Image stack; level 0 is full resolution, each next level a 2x2 box-mean
/// downsample with floor dimensions. Every level past 0 is at least 8x8.
struct Pyramid {
    std::vector<Image> levels;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

/// Clamp to [0, 255] and round half-up to a byte. Used at every export point.
std::uint8_t luminance_to_byte(double v);

/// Parse a PGM (P2 plain or P5 binary, maxval <= 255). Pixel (x, y) lands at
/// data[y*width + x], values converted unchanged.
Image load_pgm(const std::uint8_t* bytes, std::size_t size);
Image load_pgm(const std::vector<std::uint8_t>& bytes);
Image load_pgm_file(const std::string& path);

/// Serialize as binary P5, maxval 255, clamping and rounding each pixel.
std::vector<std::uint8_t> save_pgm(const Image& image);
void save_pgm_file(const Image& image, const std::string& path);

/// Serialize as binary P6: base pixels replicated to gray RGB, overlay
/// points painted in `color`. Out-of-bounds overlay points are skipped.
std::vector<std::uint8_t> save_ppm(const Image& image,
                                   const std::vector<std::pair<int, int>>& overlay,
                                   Rgb color);
void save_ppm_file(const Image& image,
                   const std::vector<std::pair<int, int>>& overlay, Rgb color,
                   const std::string& path);

/// Halve both dimensions with a 2x2 box mean; odd trailing row/column is
/// discarded. Requires width and height >= 2.
Image downsample(const Image& image);

/// Number of levels build_pyramid can produce before a level drops below 8x8.
int max_pyramid_levels(const Image& image);

/// Build num_levels levels, level 0 being the input itself.
Pyramid build_pyramid(const Image& image, int num_levels);

}  // namespace edgealign
