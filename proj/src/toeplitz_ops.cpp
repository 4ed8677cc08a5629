#include "ramstap/toeplitz_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace ramstap {

TwoLevelToeplitzCoeffs::TwoLevelToeplitzCoeffs(int num_pulses,
                                               int num_elements)
    : num_pulses_(num_pulses), num_elements_(num_elements) {
  if (num_pulses < 1 || num_elements < 1) {
    throw std::invalid_argument("TwoLevelToeplitzCoeffs: dimensions must be >= 1");
  }
  table_ = CxMatrix::Zero(2 * num_pulses - 1, 2 * num_elements - 1);
}

void TwoLevelToeplitzCoeffs::set(int i, int j, Complex v) {
  if (i == 0 && j == 0) v = Complex(v.real(), 0.0);
  table_(i + num_pulses_ - 1, j + num_elements_ - 1) = v;
  table_(-i + num_pulses_ - 1, -j + num_elements_ - 1) = std::conj(v);
}

void TwoLevelToeplitzCoeffs::add(int i, int j, Complex v) {
  if (i == 0 && j == 0) v = Complex(v.real(), 0.0);
  set(i, j, (*this)(i, j) + v);
}

Scalar TwoLevelToeplitzCoeffs::max_symmetry_error() const {
  Scalar err = 0.0;
  for (int i = -(num_pulses_ - 1); i <= num_pulses_ - 1; ++i) {
    for (int j = -(num_elements_ - 1); j <= num_elements_ - 1; ++j) {
      err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(-i, -j))));
    }
  }
  return err;
}

TwoLevelToeplitzCoeffs& TwoLevelToeplitzCoeffs::operator+=(
    const TwoLevelToeplitzCoeffs& other) {
  table_ += other.table_;
  return *this;
}

TwoLevelToeplitzCoeffs& TwoLevelToeplitzCoeffs::operator*=(Scalar c) {
  table_ *= c;
  return *this;
}

TwoLevelToeplitzCoeffs operator-(const TwoLevelToeplitzCoeffs& a,
                                 const TwoLevelToeplitzCoeffs& b) {
  TwoLevelToeplitzCoeffs d = a;
  d.table_ -= b.table_;
  return d;
}

CxMatrix toeplitz_build(const TwoLevelToeplitzCoeffs& u) {
  const int n = u.num_pulses();
  const int m = u.num_elements();
  const Scalar scale = std::max<Scalar>(1.0, u.table().cwiseAbs().maxCoeff());
  if (u.max_symmetry_error() > 1e-12 * scale) {
    throw std::invalid_argument(
        "toeplitz_build: conjugate symmetry violated beyond 1e-12");
  }
  CxMatrix s(n * m, n * m);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
          s(a * m + c, b * m + d) = u(a - b, c - d);
        }
      }
    }
  }
  return s;
}

TwoLevelToeplitzCoeffs single_atom_coeffs(Scalar doppler_freq,
                                          Scalar spatial_freq, int num_pulses,
                                          int num_elements) {
  TwoLevelToeplitzCoeffs u(num_pulses, num_elements);
  for (int i = -(num_pulses - 1); i <= num_pulses - 1; ++i) {
    for (int j = -(num_elements - 1); j <= num_elements - 1; ++j) {
      const Scalar phase = 2.0 * kPi * (i * doppler_freq + j * spatial_freq);
      u.set(i, j, Complex(std::cos(phase), std::sin(phase)));
    }
  }
  return u;
}

TwoLevelToeplitzCoeffs toeplitz_adjoint(const CxMatrix& z, int num_pulses,
                                        int num_elements) {
  const int n = num_pulses;
  const int m = num_elements;
  if (z.rows() != n * m || z.cols() != n * m) {
    throw std::invalid_argument("toeplitz_adjoint: dimension mismatch");
  }
  // Diagonal sums of the Hermitian part; these are conjugate-symmetric by
  // construction, so they fit the coefficient table.
  CxMatrix sums = CxMatrix::Zero(2 * n - 1, 2 * m - 1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < m; ++c) {
        for (int d = 0; d < m; ++d) {
          const Complex herm = 0.5 * (z(a * m + c, b * m + d) +
                                      std::conj(z(b * m + d, a * m + c)));
          sums(a - b + n - 1, c - d + m - 1) += herm;
        }
      }
    }
  }
  TwoLevelToeplitzCoeffs u(n, m);
  for (int i = 0; i <= n - 1; ++i) {
    for (int j = -(m - 1); j <= m - 1; ++j) {
      if (i == 0 && j < 0) continue;  // mirror half
      u.set(i, j, sums(i + n - 1, j + m - 1));
    }
  }
  return u;
}

TwoLevelToeplitzCoeffs toeplitz_project_coeffs(const CxMatrix& z,
                                               int num_pulses,
                                               int num_elements) {
  const int n = num_pulses;
  const int m = num_elements;
  const TwoLevelToeplitzCoeffs sums = toeplitz_adjoint(z, n, m);
  TwoLevelToeplitzCoeffs u(n, m);
  for (int i = 0; i <= n - 1; ++i) {
    for (int j = -(m - 1); j <= m - 1; ++j) {
      if (i == 0 && j < 0) continue;  // mirror half
      const Scalar count =
          static_cast<Scalar>((n - std::abs(i)) * (m - std::abs(j)));
      u.set(i, j, sums(i, j) / count);
    }
  }
  return u;
}

CxMatrix toeplitz_project(const CxMatrix& z, int num_pulses,
                          int num_elements) {
  return toeplitz_build(toeplitz_project_coeffs(z, num_pulses, num_elements));
}

CxMatrix psd_project(const CxMatrix& h) {
  const Scalar scale = std::max<Scalar>(1.0, h.norm());
  if ((h - h.adjoint()).norm() > 1e-8 * scale) {
    throw std::invalid_argument("psd_project: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CxMatrix> eig(h);
  RealVector lambda = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lambda.asDiagonal() *
         eig.eigenvectors().adjoint();
}

CxMatrix StructuredPsdIterate::assemble() const {
  const Eigen::Index k = phi.rows();
  const Eigen::Index nm = x_c.rows();
  CxMatrix g(k + nm, k + nm);
  g.topLeftCorner(k, k) = phi;
  g.bottomLeftCorner(nm, k) = x_c;
  g.topRightCorner(k, nm) = x_c.adjoint();
  g.bottomRightCorner(nm, nm) = toeplitz_build(u);
  return g;
}

}  // namespace ramstap
