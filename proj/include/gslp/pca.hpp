#pragma once

#include <Eigen/Core>

namespace gslp {

/// Orthonormal PCA basis for one patch group, eigenvalues nonincreasing.
/// Deterministic sign convention: each column's largest-magnitude entry is
/// nonnegative, ties resolved at the lowest index.
struct Dictionary {
    Eigen::MatrixXd basis;        // d x d, orthonormal columns
    Eigen::VectorXd eigenvalues;  // length d, nonincreasing
};

/// Full eigenbasis of the scatter matrix (1/m) * G * G^T of the raw group
/// matrix G. No mean is removed, so the basis reconstructs raw patches.
Dictionary pca_dictionary(const Eigen::MatrixXd& group);

/// Transform coefficients: basis^T * group (the inverse is the transpose).
Eigen::MatrixXd analyze(const Dictionary& dict, const Eigen::MatrixXd& group);

/// Reconstruction: basis * coeffs.
Eigen::MatrixXd synthesize(const Dictionary& dict, const Eigen::MatrixXd& coeffs);

}  // namespace gslp
