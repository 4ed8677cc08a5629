#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ramstap {

using Scalar = double;
using Complex = std::complex<Scalar>;

using CxVector = Eigen::VectorXcd;
using CxMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Scalar kPi = 3.141592653589793238462643383279502884;

/// Hermitian positive semidefinite covariance of a space-time cell.
/// Invariants (enforced where estimates are produced): Hermitian to ~1e-12
/// relative, eigenvalues >= -1e-10 * max eigenvalue.
struct HermitianCov {
  CxMatrix matrix;

  Eigen::Index dim() const { return matrix.rows(); }

  // ||R - R^H||_F / max(1, ||R||_F)
  Scalar hermiticity_error() const {
    const Scalar scale = std::max<Scalar>(1.0, matrix.norm());
    return (matrix - matrix.adjoint()).norm() / scale;
  }

  Scalar min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CxMatrix> eig(matrix, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
  }
};

}  // namespace ramstap
