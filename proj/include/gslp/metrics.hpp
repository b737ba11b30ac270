#pragma once

#include "gslp/image.hpp"

namespace gslp {

/// Peak signal-to-noise ratio in dB, 10*log10(255^2/MSE), with the peak
/// fixed at 255 regardless of the actual value range. Returns +infinity for
/// identical images (zero MSE).
double psnr(const Image& reference, const Image& test);

/// Mean single-scale SSIM over all full 11x11 windows, Gaussian weighted
/// (std 1.5), with C1=(0.01*255)^2 and C2=(0.03*255)^2. Both images must be
/// at least 11x11. Computed on the raw float intensities, never on clamped
/// 8-bit values.
double ssim(const Image& reference, const Image& test);

}  // namespace gslp
