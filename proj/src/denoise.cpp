#include "gslp/denoise.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gslp/gst.hpp"
#include "gslp/metrics.hpp"
#include "gslp/pca.hpp"

namespace gslp {

DenoiseConfig DenoiseConfig::defaults_for_sigma(double sigma) {
    DenoiseConfig cfg;
    cfg.sigma = sigma;
    if (sigma <= 20.0) {
        cfg.patch_side = 6;
        cfg.p = 1.0;
        cfg.c = 0.3;
        cfg.lambda = 0.1;
        cfg.delta = 0.5;
        cfg.rho = 2e-4;
    } else if (sigma <= 30.0) {
        cfg.patch_side = 7;
        cfg.p = 0.85;
        cfg.c = 0.3;
        cfg.lambda = 0.2;
        cfg.delta = 0.8;
        cfg.rho = 2e-4;
    } else if (sigma <= 40.0) {
        cfg.patch_side = 7;
        cfg.p = 0.8;
        cfg.c = 1.2;
        cfg.lambda = 0.1;
        cfg.delta = 0.4;
        cfg.rho = 6e-4;
    } else {  // 40 < sigma; published settings stop at 50, kept for anything above
        cfg.patch_side = 7;
        cfg.p = 0.75;
        cfg.c = 1.6;
        cfg.lambda = 0.1;
        cfg.delta = 0.4;
        cfg.rho = 2e-4;
    }
    return cfg;
}

void DenoiseConfig::validate() const {
    auto fail = [](const char* key, const char* what) {
        throw std::invalid_argument(std::string("config key '") + key + "' " + what);
    };
    if (!(sigma >= 0.0)) fail("sigma", "must be nonnegative");
    if (patch_side < 1) fail("patch_side", "must be a positive integer");
    if (stride < 1) fail("stride", "must be a positive integer");
    if (window_side < patch_side) fail("window_side", "must be at least patch_side");
    if (group_size < 1) fail("group_size", "must be a positive integer");
    if (!(p > 0.0 && p <= 1.0)) fail("p", "must be in (0,1]");
    if (!(c > 0.0)) fail("c", "must be positive");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda", "must be in [0,1]");
    if (!(delta > 0.0)) fail("delta", "must be positive");
    if (std::isnan(rho)) fail("rho", "must be a number");
    if (gst_iters < 1) fail("gst_iters", "must be a positive integer");
    if (outer_iters < 1) fail("outer_iters", "must be a positive integer");
    if (!(epsilon > 0.0)) fail("epsilon", "must be positive");
}

Image regularize(const Image& noisy, const Image& estimate, double lambda) {
    if (!noisy.same_size(estimate)) throw std::invalid_argument("regularize: dimension mismatch");
    Image out = estimate;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.pixels[i] += lambda * (noisy.pixels[i] - estimate.pixels[i]);
    return out;
}

double update_sigma(double sigma0, const Image& noisy, const Image& estimate, double delta) {
    if (!noisy.same_size(estimate)) throw std::invalid_argument("update_sigma: dimension mismatch");
    if (!(sigma0 >= 0.0)) throw std::invalid_argument("update_sigma: sigma0 must be nonnegative");
    double msr = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double d = noisy.pixels[i] - estimate.pixels[i];
        msr += d * d;
    }
    msr /= static_cast<double>(noisy.size());
    return delta * std::sqrt(std::max(sigma0 * sigma0 - msr, 0.0));
}

SearchTarget aps_select(const Image& theta, const Image& y_curr, const Image& y_prev, double rho) {
    const double phi = ssim(y_curr, theta) - ssim(y_prev, theta);
    return phi < rho ? SearchTarget::Iterate : SearchTarget::Theta;
}

Eigen::MatrixXd group_weights(const Eigen::MatrixXd& coeffs, double sigma_t, double c, double epsilon) {
    if (!(sigma_t >= 0.0)) throw std::invalid_argument("group_weights: sigma_t must be nonnegative");
    const Eigen::Index d = coeffs.rows();
    const Eigen::Index m = coeffs.cols();
    Eigen::MatrixXd weights(d, m);
    const double numer = c * 2.0 * std::sqrt(2.0) * sigma_t * sigma_t;
    if (numer == 0.0) {
        weights.setZero();
        return weights;
    }
    for (Eigen::Index r = 0; r < d; ++r) {
        const double mean_sq = coeffs.row(r).squaredNorm() / static_cast<double>(m);
        const double sigma_i = std::sqrt(std::max(mean_sq - sigma_t * sigma_t, 0.0));
        weights.row(r).setConstant(numer / (sigma_i + epsilon));
    }
    return weights;
}

Image denoise_once(const Image& y_reg, const Image& search_target, double sigma_t,
                   const DenoiseConfig& cfg) {
    if (!y_reg.same_size(search_target)) throw std::invalid_argument("denoise_once: dimension mismatch");

    const PatchSpec spec = cfg.patch_spec();
    const std::vector<Coord> exemplars = exemplar_grid(y_reg.width, y_reg.height, spec);
    std::vector<GroupEstimate> estimates(exemplars.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(exemplars.size()); ++i) {
        std::vector<Coord> coords = find_similar(search_target, exemplars[static_cast<std::size_t>(i)], spec);
        const Eigen::MatrixXd group = gather_patches(y_reg, coords, spec.patch_side);
        const Dictionary dict = pca_dictionary(group);
        const Eigen::MatrixXd coeffs = analyze(dict, group);
        const Eigen::MatrixXd weights = group_weights(coeffs, sigma_t, cfg.c, cfg.epsilon);
        const Eigen::MatrixXd shrunk = gst_solve_matrix(coeffs, weights, cfg.p, cfg.gst_iters);
        estimates[static_cast<std::size_t>(i)] = {std::move(coords), synthesize(dict, shrunk)};
    }

    // Sequential aggregation in exemplar-grid order keeps runs bit-identical
    // regardless of thread count.
    return aggregate(estimates, y_reg.width, y_reg.height, spec.patch_side, y_reg);
}

Image denoise(const Image& noisy, const Image& theta, const DenoiseConfig& cfg,
              const IterationObserver& observer) {
    cfg.validate();
    if (noisy.empty()) throw std::invalid_argument("denoise: empty input");
    if (cfg.use_aps && !noisy.same_size(theta))
        throw std::invalid_argument("denoise: pre-filtered image dimension mismatch");

    Image estimate = noisy;       // X^0 = Y
    Image estimate_prev = noisy;  // only read in the estimates-mode ablation
    Image y_prev;

    for (int t = 1; t <= cfg.outer_iters; ++t) {
        Image y_reg = regularize(noisy, estimate, cfg.lambda);
        const double sigma_t = update_sigma(cfg.sigma, noisy, estimate, cfg.delta);

        SearchTarget target;
        if (!cfg.use_aps) {
            target = SearchTarget::Iterate;
        } else if (t == 1) {
            target = SearchTarget::Theta;
        } else if (cfg.aps_on_estimates) {
            target = aps_select(theta, estimate, estimate_prev, cfg.rho);
        } else {
            target = aps_select(theta, y_reg, y_prev, cfg.rho);
        }

        const Image& search = (target == SearchTarget::Theta) ? theta : y_reg;
        const double sigma_w = cfg.weights_use_input_sigma ? cfg.sigma : sigma_t;
        estimate_prev = std::move(estimate);
        estimate = denoise_once(y_reg, search, sigma_w, cfg);
        y_prev = std::move(y_reg);

        if (observer) observer(IterationInfo{t, sigma_t, target, estimate});
    }
    return estimate;
}

Image bootstrap_prefilter(const Image& noisy, const DenoiseConfig& cfg) {
    return denoise_once(noisy, noisy, cfg.sigma, cfg);
}

}  // namespace gslp
