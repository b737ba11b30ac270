#include <cmath>
#include <limits>

#include "doctest.h"
#include "gslp/image.hpp"
#include "gslp/metrics.hpp"
#include "support/synthetic.hpp"

using namespace gslp;

TEST_CASE("psnr: zero MSE gives the +infinity sentinel") {
    const Image img = testsupport::make_house(32, 32);
    CHECK(psnr(img, img) == std::numeric_limits<double>::infinity());
}

TEST_CASE("psnr: constant difference, closed form") {
    const Image a(17, 9, 0.0);
    const Image b(17, 9, 5.0);
    const double expected = 10.0 * std::log10(255.0 * 255.0 / 25.0);
    CHECK(psnr(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(34.15).epsilon(1e-3));
}

TEST_CASE("psnr: sigma-20 noise lands near the closed form") {
    const Image img = testsupport::make_house(256, 256);
    const Image noisy = add_gaussian_noise(img, {20.0, 7});
    const double expected = 10.0 * std::log10(255.0 * 255.0 / 400.0);  // 22.11
    CHECK(psnr(img, noisy) == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("psnr: strictly decreasing in the noise level") {
    const Image img = testsupport::make_blobs(128, 128);
    double prev = std::numeric_limits<double>::infinity();
    for (double sigma : {5.0, 10.0, 20.0, 40.0}) {
        const double v = psnr(img, add_gaussian_noise(img, {sigma, 11}));
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("psnr/ssim: dimension mismatch") {
    const Image a(16, 16, 0.0);
    const Image b(16, 17, 0.0);
    CHECK_THROWS_AS(psnr(a, b), std::invalid_argument);
    CHECK_THROWS_AS(ssim(a, b), std::invalid_argument);
}

TEST_CASE("ssim: identical images give exactly 1") {
    const Image img = testsupport::make_house(48, 33);
    CHECK(ssim(img, img) == 1.0);
}

TEST_CASE("ssim: constant pair is stabilized to 1") {
    const Image a(16, 16, 100.0);
    const Image b(16, 16, 100.0);
    CHECK(ssim(a, b) == 1.0);
}

TEST_CASE("ssim: inverted structure scores below 1") {
    const Image img = testsupport::make_stripes(64, 64);
    Image inverted = img;
    for (double& v : inverted.pixels) v = 255.0 - v;
    CHECK(ssim(img, inverted) < 1.0);
}

TEST_CASE("ssim: rejects images smaller than the window") {
    const Image a(10, 16, 0.0);
    CHECK_THROWS_AS(ssim(a, a), std::invalid_argument);
}

TEST_CASE("metrics are symmetric") {
    const Image a = testsupport::make_rings(64, 48);
    const Image b = add_gaussian_noise(a, {10.0, 3});
    CHECK(psnr(a, b) == psnr(b, a));
    CHECK(ssim(a, b) == ssim(b, a));
}
