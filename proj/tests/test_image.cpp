/**
 * @file test_image.cpp
 * @brief PGM/PPM codecs, downsampling, pyramid construction.
 */
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "edgealign/image.h"

using namespace edgealign;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

}  // namespace

TEST_CASE("load_pgm parses binary P5") {
    const auto img = load_pgm(bytes_of("P5 2 2 255 ", {0, 255, 128, 64}));
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.data == std::vector<double>{0, 255, 128, 64});
}

TEST_CASE("load_pgm parses plain P2") {
    const std::string text = "P2 1 1 255\n7\n";
    const auto img = load_pgm(bytes_of(text, {}));
    CHECK(img.width == 1);
    CHECK(img.height == 1);
    CHECK(img.data == std::vector<double>{7});
}

TEST_CASE("load_pgm handles comments and newlines in the header") {
    const std::string text = "P2\n# a comment\n2 1\n# another\n255\n3 4\n";
    const auto img = load_pgm(bytes_of(text, {}));
    CHECK(img.data == std::vector<double>{3, 4});
}

TEST_CASE("load_pgm rejects unsupported magic with an offset") {
    try {
        load_pgm(bytes_of("P6 1 1 255 ", {1, 2, 3}));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("P6") != std::string::npos);
        CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
}

TEST_CASE("load_pgm rejects maxval > 255") {
    CHECK_THROWS_AS(load_pgm(bytes_of("P5 1 1 4095 ", {1, 2})), ParseError);
}

TEST_CASE("load_pgm reports truncation with the byte offset") {
    try {
        load_pgm(bytes_of("P5 4 4 255 ", {1, 2, 3}));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("truncated") != std::string::npos);
        CHECK(e.offset() == 11);
    }
}

TEST_CASE("PGM round-trip is exact for integer images") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 23);
    std::uniform_int_distribution<int> val(0, 255);
    for (int trial = 0; trial < 25; ++trial) {
        Image img(dim(rng), dim(rng));
        for (double& v : img.data) {
            v = static_cast<double>(val(rng));
        }
        const Image back = load_pgm(save_pgm(img));
        REQUIRE(back.width == img.width);
        REQUIRE(back.height == img.height);
        CHECK(back.data == img.data);
    }
}

TEST_CASE("save_ppm produces gray RGB with overlay pixels") {
    Image img(1, 1);
    img.data[0] = 100.0;

    SUBCASE("no overlay") {
        const auto bytes = save_ppm(img, {}, Rgb{255, 0, 0});
        REQUIRE(bytes.size() >= 3);
        const std::size_t base = bytes.size() - 3;
        CHECK(bytes[base] == 100);
        CHECK(bytes[base + 1] == 100);
        CHECK(bytes[base + 2] == 100);
    }
    SUBCASE("overlay recolors the pixel") {
        const auto bytes = save_ppm(img, {{0, 0}}, Rgb{255, 0, 0});
        const std::size_t base = bytes.size() - 3;
        CHECK(bytes[base] == 255);
        CHECK(bytes[base + 1] == 0);
        CHECK(bytes[base + 2] == 0);
    }
    SUBCASE("out-of-bounds overlay points are skipped") {
        Image two(2, 1, 50.0);
        const auto plain = save_ppm(two, {}, Rgb{255, 0, 0});
        const auto with_oob = save_ppm(two, {{5, 5}, {-1, 0}}, Rgb{255, 0, 0});
        CHECK(plain == with_oob);
    }
}

TEST_CASE("save clamps and rounds half-up") {
    Image img(4, 1);
    img.data = {-3.0, 12.5, 254.4999, 300.0};
    const auto bytes = save_pgm(img);
    const std::size_t base = bytes.size() - 4;
    CHECK(bytes[base] == 0);
    CHECK(bytes[base + 1] == 13);
    CHECK(bytes[base + 2] == 254);
    CHECK(bytes[base + 3] == 255);
}

TEST_CASE("downsample is a 2x2 box mean") {
    Image img(2, 2);
    img.data = {0, 0, 4, 4};
    const Image out = downsample(img);
    CHECK(out.width == 1);
    CHECK(out.height == 1);
    CHECK(out.data[0] == 2.0);
}

TEST_CASE("downsample preserves constants") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-40.0, 300.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double v = val(rng);
        const Image img(6, 4, v);
        const Image out = downsample(img);
        for (const double o : out.data) {
            CHECK(o == v);
        }
    }
    const Image nine(4, 4, 9.0);
    for (const double o : downsample(nine).data) {
        CHECK(o == 9.0);
    }
}

TEST_CASE("downsample drops odd trailing row/column") {
    const Image img(5, 5, 1.0);
    const Image out = downsample(img);
    CHECK(out.width == 2);
    CHECK(out.height == 2);
}

TEST_CASE("downsample rejects images smaller than 2x2") {
    CHECK_THROWS_AS(downsample(Image(1, 5, 0.0)), SizeError);
}

TEST_CASE("build_pyramid with one level is the image itself") {
    Image img(10, 13);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        img.data[i] = static_cast<double>(i);
    }
    const Pyramid pyr = build_pyramid(img, 1);
    REQUIRE(pyr.levels.size() == 1);
    CHECK(pyr.levels[0].data == img.data);
}

TEST_CASE("build_pyramid dims follow repeated floor halving") {
    const Image img(812, 617, 0.0);
    const Pyramid pyr = build_pyramid(img, 3);
    REQUIRE(pyr.levels.size() == 3);
    CHECK(pyr.levels[0].width == 812);
    CHECK(pyr.levels[0].height == 617);
    CHECK(pyr.levels[1].width == 406);
    CHECK(pyr.levels[1].height == 308);
    CHECK(pyr.levels[2].width == 203);
    CHECK(pyr.levels[2].height == 154);

    int w = 812, h = 617;
    for (const Image& level : pyr.levels) {
        CHECK(level.width == w);
        CHECK(level.height == h);
        w /= 2;
        h /= 2;
    }
}

TEST_CASE("build_pyramid reports the maximum feasible level count") {
    const Image img(16, 16, 0.0);
    try {
        build_pyramid(img, 4);
        FAIL("expected SizeError");
    } catch (const SizeError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    CHECK(max_pyramid_levels(img) == 2);
    CHECK(build_pyramid(img, 2).levels.size() == 2);
}
