#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gslp {

/// 2-D grayscale image stored as row-major doubles. The nominal intensity
/// range is [0,255]; values may leave that range while processing and are
/// only rounded and clamped when the image is saved.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // size width*height, index = y*width + x

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
    std::size_t size() const { return pixels.size(); }
    bool empty() const { return pixels.empty(); }
};

struct NoiseSpec {
    double sigma = 0.0;       // noise standard deviation, intensity units
    std::uint64_t seed = 0;
};

/// Load an 8-bit grayscale image. Binary PGM (P5) and grayscale PNG are
/// accepted; the format is detected from the file's magic bytes.
Image load_image(const std::string& path);

/// Save as binary PGM or PNG depending on the file extension (.pgm/.png).
/// Intensities are rounded half-away-from-zero and clamped to [0,255] here
/// and nowhere else in the pipeline.
void save_image(const Image& img, const std::string& path);

/// Add i.i.d. zero-mean Gaussian noise with standard deviation spec.sigma.
///
/// The generator is fixed bit-exactly: a std::mt19937_64 seeded with
/// spec.seed produces uniforms from the top 53 bits of each draw, and a
/// Box-Muller transform turns consecutive pairs into two normal deviates
/// consumed in row-major pixel order. Identical (image, spec) inputs always
/// produce the identical noise field. The result is not clamped.
Image add_gaussian_noise(const Image& img, const NoiseSpec& spec);

}  // namespace gslp
