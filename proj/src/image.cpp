/**
 * @file image.cpp
 * @brief Raster container, Netpbm codecs (PGM P2/P5 in, PGM P5 / PPM P6 out),
 *        box-mean downsampling and pyramid construction.
 */
#include "edgealign/image.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "edgealign/simd/kernels.h"

namespace edgealign {

Image::Image(int w, int h, double fill)
    : width(w), height(h) {
    if (w < 1 || h < 1) {
        throw SizeError("image dimensions must be at least 1x1, got " +
                        std::to_string(w) + "x" + std::to_string(h));
    }
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

std::uint8_t luminance_to_byte(double v) {
    if (!(v > 0.0)) {
        return 0;
    }
    if (v >= 255.0) {
        return 255;
    }
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

// ============================================================================
// PGM parsing
// ============================================================================

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
}

/// Tokenizer over the raw bytes; every error names the current byte offset.
struct ByteCursor {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;

    bool eof() const { return pos >= size; }

    void skip_space_and_comments() {
        while (!eof()) {
            if (is_pgm_space(data[pos])) {
                ++pos;
            } else if (data[pos] == '#') {
                while (!eof() && data[pos] != '\n') {
                    ++pos;
                }
            } else {
                break;
            }
        }
    }

    long next_uint(const char* what, long max_value) {
        skip_space_and_comments();
        if (eof()) {
            throw ParseError(std::string("truncated header: missing ") + what, pos);
        }
        if (data[pos] < '0' || data[pos] > '9') {
            throw ParseError(std::string("expected unsigned integer for ") + what,
                             pos);
        }
        const std::size_t start = pos;
        long value = 0;
        while (!eof() && data[pos] >= '0' && data[pos] <= '9') {
            value = value * 10 + (data[pos] - '0');
            if (value > max_value) {
                throw ParseError(std::string(what) + " exceeds limit " +
                                 std::to_string(max_value),
                                 start);
            }
            ++pos;
        }
        return value;
    }
};

}  // namespace

Image load_pgm(const std::uint8_t* bytes, std::size_t size) {
    ByteCursor cur{bytes, size};
    if (size < 2 || bytes[0] != 'P') {
        throw ParseError("not a PGM stream: missing P2/P5 magic", 0);
    }
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '2' && kind != '5') {
        throw ParseError(std::string("unsupported magic \"P") + kind +
                         "\"; only P2 and P5 are accepted", 0);
    }
    cur.pos = 2;

    const long width = cur.next_uint("width", 1 << 20);
    const long height = cur.next_uint("height", 1 << 20);
    if (width < 1 || height < 1) {
        throw ParseError("image dimensions must be at least 1x1", cur.pos);
    }
    const std::size_t maxval_at = (cur.skip_space_and_comments(), cur.pos);
    const long maxval = cur.next_uint("maxval", 65535);
    if (maxval < 1 || maxval > 255) {
        throw ParseError("unsupported maxval " + std::to_string(maxval) +
                         " (only <= 255)", maxval_at);
    }

    Image img(static_cast<int>(width), static_cast<int>(height));
    const std::size_t count = img.data.size();

    if (kind == '5') {
        if (cur.eof() || !is_pgm_space(bytes[cur.pos])) {
            throw ParseError("expected single whitespace before binary payload",
                             cur.pos);
        }
        ++cur.pos;
        if (size - cur.pos < count) {
            throw ParseError("truncated pixel payload: need " +
                             std::to_string(count) + " bytes, have " +
                             std::to_string(size - cur.pos), cur.pos);
        }
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint8_t v = bytes[cur.pos + i];
            if (v > maxval) {
                throw ParseError("pixel value " + std::to_string(v) +
                                 " exceeds maxval " + std::to_string(maxval),
                                 cur.pos + i);
            }
            img.data[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = cur.next_uint("pixel value", 255);
            if (v > maxval) {
                throw ParseError("pixel value " + std::to_string(v) +
                                 " exceeds maxval " + std::to_string(maxval),
                                 cur.pos);
            }
            img.data[i] = static_cast<double>(v);
        }
    }
    return img;
}

Image load_pgm(const std::vector<std::uint8_t>& bytes) {
    return load_pgm(bytes.data(), bytes.size());
}

Image load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

// ============================================================================
// PGM / PPM writing
// ============================================================================

namespace {

void append_header(std::vector<std::uint8_t>& out, const char* magic,
                   int width, int height) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof(buf), "%s\n%d %d\n255\n", magic,
                                width, height);
    out.insert(out.end(), buf, buf + n);
}

void write_file(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open file for writing: " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write failed: " + path);
    }
}

}  // namespace

std::vector<std::uint8_t> save_pgm(const Image& image) {
    std::vector<std::uint8_t> out;
    out.reserve(image.data.size() + 32);
    append_header(out, "P5", image.width, image.height);
    for (const double v : image.data) {
        out.push_back(luminance_to_byte(v));
    }
    return out;
}

void save_pgm_file(const Image& image, const std::string& path) {
    write_file(save_pgm(image), path);
}

std::vector<std::uint8_t> save_ppm(const Image& image,
                                   const std::vector<std::pair<int, int>>& overlay,
                                   Rgb color) {
    std::vector<std::uint8_t> out;
    out.reserve(image.data.size() * 3 + 32);
    append_header(out, "P6", image.width, image.height);
    const std::size_t base = out.size();
    for (const double v : image.data) {
        const std::uint8_t g = luminance_to_byte(v);
        out.push_back(g);
        out.push_back(g);
        out.push_back(g);
    }
    for (const auto& [x, y] : overlay) {
        if (!image.in_bounds(x, y)) {
            continue;
        }
        const std::size_t at =
            base + 3 * (static_cast<std::size_t>(y) * image.width + x);
        out[at] = color.r;
        out[at + 1] = color.g;
        out[at + 2] = color.b;
    }
    return out;
}

void save_ppm_file(const Image& image,
                   const std::vector<std::pair<int, int>>& overlay, Rgb color,
                   const std::string& path) {
    write_file(save_ppm(image, overlay, color), path);
}

// ============================================================================
// Downsampling and pyramids
// ============================================================================

Image downsample(const Image& image) {
    if (image.width < 2 || image.height < 2) {
        throw SizeError("downsample needs at least 2x2, got " +
                        std::to_string(image.width) + "x" +
                        std::to_string(image.height));
    }
    Image out(image.width / 2, image.height / 2);
    const auto& k = simd::active();
    for (int y = 0; y < out.height; ++y) {
        k.downsample_row(image.row(2 * y), image.row(2 * y + 1), out.width,
                         out.row(y));
    }
    return out;
}

int max_pyramid_levels(const Image& image) {
    int levels = 1;
    int w = image.width, h = image.height;
    while (w / 2 >= 8 && h / 2 >= 8) {
        w /= 2;
        h /= 2;
        ++levels;
    }
    return levels;
}

Pyramid build_pyramid(const Image& image, int num_levels) {
    if (num_levels < 1) {
        throw InvalidArgument("num_levels must be >= 1");
    }
    const int feasible = max_pyramid_levels(image);
    if (num_levels > feasible) {
        throw SizeError("pyramid of " + std::to_string(num_levels) +
                        " levels would drop below 8x8; maximum feasible level "
                        "count is " + std::to_string(feasible));
    }
    Pyramid pyr;
    pyr.levels.reserve(static_cast<std::size_t>(num_levels));
    pyr.levels.push_back(image);
    for (int k = 1; k < num_levels; ++k) {
        pyr.levels.push_back(downsample(pyr.levels.back()));
    }
    return pyr;
}

}  // namespace edgealign
