#pragma once

// Deterministic synthetic test images. All generators are closed-form in the
// pixel coordinates, so every build sees bit-identical inputs. The set mixes
// flat areas, sharp edges and repeating texture, the structures a nonlocal
// denoiser feeds on.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gslp/image.hpp"

namespace gslp::testsupport {

constexpr double kPi = 3.14159265358979323846;

inline Image make_house(int w, int h) {
    Image img(w, h);
    const double wall_x0 = 0.18 * w, wall_x1 = 0.70 * w;
    const double wall_y0 = 0.48 * h, wall_y1 = 0.90 * h;
    const double ridge_x = 0.44 * w, ridge_y = 0.26 * h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double val = 206.0 - 26.0 * y / h;  // sky
            if (std::hypot(x - 0.84 * w, y - 0.12 * h) < 0.055 * w) val = 244.0;  // sun
            if (y > wall_y1) val = 98.0 + 14.0 * std::sin(2.0 * kPi * x / 13.0);  // ground
            if (x >= wall_x0 && x <= wall_x1) {
                const double roof_edge =
                    (x < ridge_x) ? wall_y0 + (ridge_y - wall_y0) * (x - wall_x0) / (ridge_x - wall_x0)
                                  : wall_y0 + (ridge_y - wall_y0) * (wall_x1 - x) / (wall_x1 - ridge_x);
                if (y >= roof_edge && y < wall_y0)
                    val = 74.0 + 10.0 * std::sin(2.0 * kPi * (x + 2.0 * y) / 11.0);  // shingles
                if (y >= wall_y0 && y <= wall_y1) {
                    val = 150.0 + 9.0 * std::sin(2.0 * kPi * y / 7.0);  // siding
                    if (x >= 0.24 * w && x <= 0.34 * w && y >= 0.55 * h && y <= 0.67 * h) val = 52.0;
                    if (x >= 0.54 * w && x <= 0.64 * w && y >= 0.55 * h && y <= 0.67 * h) val = 52.0;
                    if (x >= 0.40 * w && x <= 0.48 * w && y >= 0.70 * h) val = 88.0;  // door
                }
            }
            img.at(x, y) = val;
        }
    }
    return img;
}

inline Image make_gradient(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = static_cast<double>(x) / (w - 1);
            const double v = static_cast<double>(y) / (h - 1);
            img.at(x, y) = 45.0 + 150.0 * (0.6 * u + 0.4 * v) + 22.0 * std::sin(2.0 * kPi * (u + 0.5 * v));
        }
    return img;
}

inline Image make_rings(int w, int h) {
    Image img(w, h);
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double r = std::hypot(x - cx, y - cy);
            img.at(x, y) = 128.0 + 88.0 * std::cos(r / 7.0);
        }
    return img;
}

inline Image make_stripes(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double t = (x < w / 2) ? (x + 2.0 * y) : (2.0 * x - y);
            img.at(x, y) = 128.0 + 78.0 * std::sin(2.0 * kPi * t / 16.0);
        }
    return img;
}

inline Image make_blobs(int w, int h) {
    struct Blob {
        double u, v, amp, rad;
    };
    static const Blob blobs[] = {
        {0.30, 0.25, 120.0, 0.12}, {0.70, 0.30, 90.0, 0.10}, {0.45, 0.70, 110.0, 0.16},
        {0.80, 0.75, 70.0, 0.09},  {0.15, 0.80, 60.0, 0.08},
    };
    Image img(w, h);
    const double scale = std::min(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double val = 70.0;
            for (const Blob& b : blobs) {
                const double dx = x - b.u * w, dy = y - b.v * h, s = b.rad * scale;
                val += b.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
            }
            img.at(x, y) = std::min(val, 250.0);
        }
    return img;
}

inline Image make_checker(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = 130.0 + 85.0 * std::tanh(3.0 * std::sin(kPi * x / 24.0) * std::sin(kPi * y / 24.0));
    return img;
}

inline std::vector<std::pair<std::string, Image>> test_set(int w, int h) {
    return {
        {"house", make_house(w, h)},     {"gradient", make_gradient(w, h)},
        {"rings", make_rings(w, h)},     {"stripes", make_stripes(w, h)},
        {"blobs", make_blobs(w, h)},     {"checker", make_checker(w, h)},
    };
}

}  // namespace gslp::testsupport
