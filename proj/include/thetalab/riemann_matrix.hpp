#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace thetalab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// A point τ of the Siegel upper half-space of degree g.
///
/// Construction validates symmetry and positive-definiteness of Im τ and
/// caches the factorizations every theta evaluation needs: the upper
/// triangular factor T with Im τ = TᵀT, the inverse of Im τ and its
/// smallest eigenvalue.
class RiemannMatrix {
public:
    explicit RiemannMatrix(CMatrix entries);

    std::size_t genus() const { return static_cast<std::size_t>(tau_.rows()); }
    const CMatrix& entries() const { return tau_; }
    RMatrix real_part() const { return tau_.real(); }
    const RMatrix& imag_part() const { return imag_; }

    /// Upper triangular T with Im τ = TᵀT.
    const RMatrix& cholesky_upper() const { return upper_; }
    const RMatrix& imag_inverse() const { return imag_inv_; }
    double min_eigenvalue() const { return min_eig_; }

    /// The matrix 2τ, used by the second-order theta functions.
    RiemannMatrix doubled() const;

    /// Block-diagonal check, used to pick up product structure in descriptors.
    bool is_diagonal(double tol = 0.0) const;

private:
    CMatrix tau_;
    RMatrix imag_;
    RMatrix upper_;
    RMatrix imag_inv_;
    double min_eig_ = 0.0;
};

}  // namespace thetalab
