#pragma once

#include <Eigen/Core>

namespace gslp {

/// One scalar instance of min_x 0.5*(gamma - x)^2 + weight*|x|^p.
struct GstProblem {
    double gamma = 0.0;
    double weight = 0.0;
    double p = 1.0;
    int iters = 2;
};

/// Threshold below which |gamma| maps to exactly 0:
/// tau = (2w(1-p))^(1/(2-p)) + w*p*(2w(1-p))^((p-1)/(2-p)).
/// At p=1 the limit value tau = w is used (0^0 taken as 1); w=0 gives 0.
double gst_threshold(double weight, double p);

/// Generalized soft-thresholding. |gamma| <= tau returns 0; otherwise runs
/// `iters` fixed-point updates alpha <- |gamma| - weight*p*alpha^(p-1)
/// starting from alpha = |gamma| and restores the sign. Reduces exactly to
/// soft thresholding at p=1 for any iters >= 1.
double gst_solve(double gamma, double weight, double p, int iters);
double gst_solve(const GstProblem& prob);

/// Elementwise gst_solve with a matching matrix of per-entry weights.
Eigen::MatrixXd gst_solve_matrix(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& weights,
                                 double p, int iters);

}  // namespace gslp
