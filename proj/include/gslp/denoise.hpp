#pragma once

#include <Eigen/Core>
#include <functional>

#include "gslp/image.hpp"
#include "gslp/patching.hpp"

namespace gslp {

/// All tunables of the iterative group-sparse denoiser. defaults_for_sigma
/// picks the published per-noise-level settings.
struct DenoiseConfig {
    double sigma = 0.0;   // input noise standard deviation
    int patch_side = 6;   // sqrt(d)
    int stride = 4;       // exemplar grid stride
    int window_side = 30; // search window L
    int group_size = 60;  // similar patches m
    double p = 1.0;       // lp exponent, in (0,1]
    double c = 0.3;       // weight scale
    double lambda = 0.1;  // regularization step, in [0,1]
    double delta = 0.5;   // noise decay factor
    double rho = 2e-4;    // adaptive-search SSIM threshold
    int gst_iters = 2;    // J
    int outer_iters = 8;  // K
    double epsilon = 1e-8;  // division guard in the weights

    bool use_aps = true;  // false: always search on the regularized iterate
    // Ablations: SSIM test on the running estimates instead of the
    // regularized iterates; weights built from the input sigma instead of
    // the per-iteration sigma_t.
    bool aps_on_estimates = false;
    bool weights_use_input_sigma = false;

    static DenoiseConfig defaults_for_sigma(double sigma);
    PatchSpec patch_spec() const { return {patch_side, stride, window_side, group_size}; }

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
};

enum class SearchTarget { Iterate, Theta };

struct IterationInfo {
    int t = 0;
    double sigma_t = 0.0;
    SearchTarget target = SearchTarget::Iterate;
    const Image& estimate;
};
using IterationObserver = std::function<void(const IterationInfo&)>;

/// Iterative regularization step: estimate + lambda * (noisy - estimate).
Image regularize(const Image& noisy, const Image& estimate, double lambda);

/// Per-iteration noise level: delta * sqrt(max(sigma0^2 - mean((noisy-estimate)^2), 0)).
double update_sigma(double sigma0, const Image& noisy, const Image& estimate, double delta);

/// Adaptive patch search decision. phi = ssim(y_curr, theta) - ssim(y_prev, theta);
/// phi < rho keeps the current iterate as search target, otherwise theta.
SearchTarget aps_select(const Image& theta, const Image& y_curr, const Image& y_prev, double rho);

/// Shrinkage weights, one value per dictionary atom shared across the row:
/// sigma_i(r) = sqrt(max(mean_j coeffs(r,j)^2 - sigma_t^2, 0)),
/// w(r,.) = c * 2*sqrt(2) * sigma_t^2 / (sigma_i(r) + epsilon).
/// sigma_t = 0 yields all-zero weights.
Eigen::MatrixXd group_weights(const Eigen::MatrixXd& coeffs, double sigma_t, double c, double epsilon);

/// One full pass over the exemplar grid: search on search_target, gather
/// pixels from y_reg, per-group PCA + weighted shrinkage, aggregate (y_reg
/// is the aggregation fallback).
Image denoise_once(const Image& y_reg, const Image& search_target, double sigma_t,
                   const DenoiseConfig& cfg);

/// Full iterative pipeline. theta is the pre-filtered search reference; the
/// first iteration always searches on theta, later ones go through
/// aps_select. With cfg.use_aps == false the search always uses the
/// regularized iterate and theta is ignored.
Image denoise(const Image& noisy, const Image& theta, const DenoiseConfig& cfg,
              const IterationObserver& observer = nullptr);

/// Built-in stand-in for an external pre-filter: a single denoise_once pass
/// over the noisy image, searching on the noisy image itself at full noise
/// strength.
Image bootstrap_prefilter(const Image& noisy, const DenoiseConfig& cfg);

}  // namespace gslp
