#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "gslp/image.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"

using namespace gslp;
using testsupport::TempDir;

namespace {

void write_bytes(const std::string& path, const std::string& header, const std::vector<unsigned char>& data) {
    std::ofstream out(path, std::ios::binary);
    out << header;
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace

TEST_CASE("pgm: direct byte decode") {
    TempDir dir;
    const auto path = dir.file("tiny.pgm");
    write_bytes(path, "P5\n2 2\n255\n", {0, 128, 255, 64});
    const Image img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    REQUIRE(img.pixels.size() == 4);
    CHECK(img.pixels[0] == 0.0);
    CHECK(img.pixels[1] == 128.0);
    CHECK(img.pixels[2] == 255.0);
    CHECK(img.pixels[3] == 64.0);
}

TEST_CASE("pgm: truncated payload") {
    TempDir dir;
    const auto path = dir.file("short.pgm");
    write_bytes(path, "P5\n2 2\n255\n", {0, 128, 255});
    CHECK_THROWS_WITH_AS(load_image(path), "unexpected end of data", std::runtime_error);
}

TEST_CASE("save: rounding and clamping rules") {
    TempDir dir;
    Image img(2, 2);
    img.pixels = {255.7, -3.2, 127.5, 100.0};
    const auto path = dir.file("clamp.pgm");
    save_image(img, path);
    const Image back = load_image(path);
    CHECK(back.pixels[0] == 255.0);
    CHECK(back.pixels[1] == 0.0);
    CHECK(back.pixels[2] == 128.0);
    CHECK(back.pixels[3] == 100.0);
}

TEST_CASE("round trip keeps integer images intact") {
    TempDir dir;
    std::mt19937 rng(7);
    Image img(37, 23);
    for (double& v : img.pixels) v = static_cast<double>(rng() % 256);

    for (const char* name : {"rt.pgm", "rt.png"}) {
        const auto path = dir.file(name);
        save_image(img, path);
        const Image back = load_image(path);
        REQUIRE(back.width == img.width);
        REQUIRE(back.height == img.height);
        CHECK(back.pixels == img.pixels);
    }
}

TEST_CASE("load errors") {
    TempDir dir;
    CHECK_THROWS_AS(load_image(dir.file("missing.pgm")), std::runtime_error);

    const auto junk = dir.file("junk.img");
    write_bytes(junk, "hello world", {});
    CHECK_THROWS_AS(load_image(junk), std::runtime_error);

    const auto deep = dir.file("deep.pgm");
    write_bytes(deep, "P5\n2 2\n65535\n", {0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(load_image(deep), std::runtime_error);
}

TEST_CASE("png: non-grayscale input is rejected") {
    TempDir dir;
    const auto path = dir.file("rgb.png");
    {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        REQUIRE(fp != nullptr);
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        png_infop info = png_create_info_struct(png);
        REQUIRE(setjmp(png_jmpbuf(png)) == 0);
        png_init_io(png, fp);
        png_set_IHDR(png, info, 2, 2, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        unsigned char row0[6] = {255, 0, 0, 0, 255, 0};
        unsigned char row1[6] = {0, 0, 255, 255, 255, 255};
        png_write_row(png, row0);
        png_write_row(png, row1);
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
    }
    CHECK_THROWS_WITH_AS(load_image(path), "unsupported PNG format: need 8-bit grayscale without alpha",
                         std::runtime_error);
}

TEST_CASE("noise: sigma 0 is the identity") {
    const Image img = testsupport::make_house(32, 32);
    const Image out = add_gaussian_noise(img, {0.0, 1234});
    CHECK(out.pixels == img.pixels);
}

TEST_CASE("noise: deterministic in (image, spec)") {
    const Image img = testsupport::make_rings(40, 28);
    const Image a = add_gaussian_noise(img, {15.0, 99});
    const Image b = add_gaussian_noise(img, {15.0, 99});
    CHECK(a.pixels == b.pixels);
    const Image c = add_gaussian_noise(img, {15.0, 100});
    CHECK(a.pixels != c.pixels);
}

TEST_CASE("noise: sample moments at sigma 20 on 256x256") {
    const Image img = testsupport::make_house(256, 256);
    const Image out = add_gaussian_noise(img, {20.0, 42});
    const std::size_t n = img.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += out.pixels[i] - img.pixels[i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = out.pixels[i] - img.pixels[i] - mean;
        var += d * d;
    }
    const double sd = std::sqrt(var / static_cast<double>(n));
    CHECK(std::abs(mean) <= 0.5);
    CHECK(std::abs(sd - 20.0) <= 0.5);
}

TEST_CASE("noise: moment bounds hold across seeds") {
    const Image img = testsupport::make_gradient(128, 96);
    const double sigma = 12.0;
    const double n = static_cast<double>(img.size());
    for (std::uint64_t seed : {1ull, 77ull, 31337ull, 2026ull}) {
        const Image out = add_gaussian_noise(img, {sigma, seed});
        double mean = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) mean += out.pixels[i] - img.pixels[i];
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) {
            const double d = out.pixels[i] - img.pixels[i] - mean;
            var += d * d;
        }
        const double sd = std::sqrt(var / n);
        CHECK(std::abs(mean) <= 4.0 * sigma / std::sqrt(n));
        CHECK(std::abs(sd - sigma) <= 5.0 * sigma / std::sqrt(2.0 * n));
    }
}

TEST_CASE("noise: output is not clamped") {
    const Image img(64, 64, 250.0);
    const Image out = add_gaussian_noise(img, {20.0, 5});
    double maxv = 0.0;
    for (double v : out.pixels) maxv = std::max(maxv, v);
    CHECK(maxv > 255.0);
}

TEST_CASE("negative sigma is rejected") {
    const Image img(4, 4, 0.0);
    CHECK_THROWS_AS(add_gaussian_noise(img, {-1.0, 0}), std::invalid_argument);
}
