#include "gslp/pca.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gslp {

Dictionary pca_dictionary(const Eigen::MatrixXd& group) {
    if (group.rows() < 1 || group.cols() < 1) throw std::invalid_argument("pca_dictionary: empty group");
    if (!group.allFinite()) throw std::invalid_argument("pca_dictionary: non-finite input");

    const Eigen::Index d = group.rows();
    const Eigen::MatrixXd scatter = (group * group.transpose()) / static_cast<double>(group.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scatter);
    if (solver.info() != Eigen::Success) throw std::runtime_error("pca_dictionary: eigendecomposition failed");

    // The solver gives ascending eigenvalues; reorder to nonincreasing with a
    // stable sort so equal eigenvalues keep a deterministic order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return solver.eigenvalues()(a) > solver.eigenvalues()(b);
    });

    Dictionary dict;
    dict.basis.resize(d, d);
    dict.eigenvalues.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        Eigen::VectorXd v = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
        // Sign convention: largest-magnitude entry nonnegative, ties at the lowest index.
        Eigen::Index imax = 0;
        for (Eigen::Index i = 1; i < d; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
        if (v(imax) < 0.0) v = -v;
        dict.basis.col(k) = v;
        dict.eigenvalues(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
    }
    return dict;
}

Eigen::MatrixXd analyze(const Dictionary& dict, const Eigen::MatrixXd& group) {
    if (dict.basis.rows() != group.rows()) throw std::invalid_argument("analyze: dimension mismatch");
    return dict.basis.transpose() * group;
}

Eigen::MatrixXd synthesize(const Dictionary& dict, const Eigen::MatrixXd& coeffs) {
    if (dict.basis.cols() != coeffs.rows()) throw std::invalid_argument("synthesize: dimension mismatch");
    return dict.basis * coeffs;
}

}  // namespace gslp
