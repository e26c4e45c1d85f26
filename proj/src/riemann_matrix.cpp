#include "thetalab/riemann_matrix.hpp"

#include <cmath>
#include <string>

#include "thetalab/error.hpp"

namespace thetalab {

RiemannMatrix::RiemannMatrix(CMatrix entries) : tau_(std::move(entries)) {
    if (tau_.rows() == 0 || tau_.rows() != tau_.cols()) {
        throw InvalidInput("period matrix must be square with g >= 1");
    }
    if (!tau_.allFinite()) {
        throw InvalidInput("period matrix has non-finite entries");
    }
    const double largest = tau_.cwiseAbs().maxCoeff();
    const double asym = (tau_ - tau_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * largest) {
        throw InvalidInput("period matrix is not symmetric (max |tau_ij - tau_ji| = " +
                           std::to_string(asym) + ")");
    }
    // Symmetrize exactly so downstream quadratic forms are real-symmetric.
    tau_ = (0.5 * (tau_ + tau_.transpose())).eval();
    imag_ = tau_.imag();

    Eigen::LLT<RMatrix> llt(imag_);
    if (llt.info() != Eigen::Success) {
        throw InvalidInput("imaginary part of the period matrix is not positive definite");
    }
    upper_ = llt.matrixU();
    for (Eigen::Index i = 0; i < upper_.rows(); ++i) {
        if (!(upper_(i, i) > 0.0)) {
            throw InvalidInput("imaginary part of the period matrix is not positive definite");
        }
    }
    imag_inv_ = llt.solve(RMatrix::Identity(imag_.rows(), imag_.cols()));
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(imag_, Eigen::EigenvaluesOnly);
    min_eig_ = eig.eigenvalues().minCoeff();
    if (!(min_eig_ > 0.0)) {
        throw InvalidInput("imaginary part of the period matrix is not positive definite");
    }
}

RiemannMatrix RiemannMatrix::doubled() const { return RiemannMatrix(2.0 * tau_); }

bool RiemannMatrix::is_diagonal(double tol) const {
    for (Eigen::Index i = 0; i < tau_.rows(); ++i) {
        for (Eigen::Index j = 0; j < tau_.cols(); ++j) {
            if (i != j && std::abs(tau_(i, j)) > tol) return false;
        }
    }
    return true;
}

}  // namespace thetalab
