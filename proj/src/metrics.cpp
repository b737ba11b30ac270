#include "gslp/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gslp {

double psnr(const Image& reference, const Image& test) {
    if (!reference.same_size(test)) throw std::invalid_argument("psnr: dimension mismatch");
    if (reference.empty()) throw std::invalid_argument("psnr: empty image");
    double mse = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference.pixels[i] - test.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(reference.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

constexpr int kWin = 11;

// 11x11 Gaussian window, std 1.5, normalized to sum 1.
const std::array<double, kWin * kWin>& gaussian_window() {
    static const std::array<double, kWin * kWin> w = [] {
        std::array<double, kWin * kWin> g{};
        double sum = 0.0;
        for (int y = 0; y < kWin; ++y) {
            for (int x = 0; x < kWin; ++x) {
                const double dx = x - (kWin - 1) / 2.0;
                const double dy = y - (kWin - 1) / 2.0;
                g[y * kWin + x] = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
                sum += g[y * kWin + x];
            }
        }
        for (double& v : g) v /= sum;
        return g;
    }();
    return w;
}

}  // namespace

double ssim(const Image& reference, const Image& test) {
    if (!reference.same_size(test)) throw std::invalid_argument("ssim: dimension mismatch");
    if (reference.width < kWin || reference.height < kWin)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    const auto& w = gaussian_window();
    const int width = reference.width;

    double total = 0.0;
    std::size_t count = 0;
    for (int wy = 0; wy + kWin <= reference.height; ++wy) {
        for (int wx = 0; wx + kWin <= reference.width; ++wx) {
            double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
            for (int r = 0; r < kWin; ++r) {
                const double* px = &reference.pixels[static_cast<std::size_t>(wy + r) * width + wx];
                const double* py = &test.pixels[static_cast<std::size_t>(wy + r) * width + wx];
                const double* wr = &w[static_cast<std::size_t>(r) * kWin];
                // products grouped so that swapping the inputs is bit-exact
                for (int c = 0; c < kWin; ++c) {
                    mx += wr[c] * px[c];
                    my += wr[c] * py[c];
                    sxx += wr[c] * (px[c] * px[c]);
                    syy += wr[c] * (py[c] * py[c]);
                    sxy += wr[c] * (px[c] * py[c]);
                }
            }
            const double vx = sxx - mx * mx;
            const double vy = syy - my * my;
            const double cov = sxy - mx * my;
            total += ((2.0 * (mx * my) + kC1) * (2.0 * cov + kC2)) /
                     ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace gslp
