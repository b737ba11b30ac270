#include "gslp/gst.hpp"

#include <cmath>
#include <stdexcept>

namespace gslp {

namespace {

void check_params(double weight, double p, int iters) {
    if (!(weight >= 0.0)) throw std::invalid_argument("gst: weight must be nonnegative");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gst: p must be in (0,1]");
    if (iters < 1) throw std::invalid_argument("gst: iters must be positive");
}

}  // namespace

double gst_threshold(double weight, double p) {
    if (!(weight >= 0.0)) throw std::invalid_argument("gst: weight must be nonnegative");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gst: p must be in (0,1]");
    if (weight == 0.0) return 0.0;
    if (p == 1.0) return weight;  // limit of the expression below, 0^0 taken as 1
    const double base = 2.0 * weight * (1.0 - p);
    return std::pow(base, 1.0 / (2.0 - p)) + weight * p * std::pow(base, (p - 1.0) / (2.0 - p));
}

double gst_solve(double gamma, double weight, double p, int iters) {
    check_params(weight, p, iters);
    const double a = std::abs(gamma);
    if (a <= gst_threshold(weight, p)) return 0.0;

    // Fixed point of alpha = |gamma| - w*p*alpha^(p-1), approached
    // monotonically from alpha = |gamma|. The floor only absorbs rounding;
    // above the threshold the iterates stay strictly positive.
    double alpha = a;
    for (int k = 0; k < iters; ++k) {
        alpha = a - weight * p * std::pow(alpha, p - 1.0);
        if (alpha < 1e-12) alpha = 1e-12;
    }
    return gamma < 0.0 ? -alpha : alpha;
}

double gst_solve(const GstProblem& prob) { return gst_solve(prob.gamma, prob.weight, prob.p, prob.iters); }

Eigen::MatrixXd gst_solve_matrix(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& weights,
                                 double p, int iters) {
    if (coeffs.rows() != weights.rows() || coeffs.cols() != weights.cols())
        throw std::invalid_argument("gst_solve_matrix: shape mismatch");
    Eigen::MatrixXd out(coeffs.rows(), coeffs.cols());
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
        for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
            out(i, j) = gst_solve(coeffs(i, j), weights(i, j), p, iters);
    return out;
}

}  // namespace gslp
