#pragma once

#include "ramstap/types.hpp"

namespace ramstap {

/// Coefficients u_{i,j} of a two-level (block) Toeplitz Hermitian matrix:
/// an N x N block-Toeplitz matrix whose (a, b) block is the M x M Toeplitz
/// matrix T_{a-b}, with T_i(c, d) = u_{i, c-d}.
///
/// The full conjugate-symmetric table is stored, u_{-i,-j} = conj(u_{i,j}),
/// with the symmetry maintained by set(); u_{0,0} is kept real.
class TwoLevelToeplitzCoeffs {
 public:
  TwoLevelToeplitzCoeffs() = default;
  TwoLevelToeplitzCoeffs(int num_pulses, int num_elements);

  int num_pulses() const { return num_pulses_; }
  int num_elements() const { return num_elements_; }

  /// i in [-(N-1), N-1], j in [-(M-1), M-1].
  Complex operator()(int i, int j) const {
    return table_(i + num_pulses_ - 1, j + num_elements_ - 1);
  }

  /// Writes u_{i,j} = v and u_{-i,-j} = conj(v); for (0,0) keeps the real part.
  void set(int i, int j, Complex v);

  /// Adds v at (i,j) and conj(v) at (-i,-j); (0,0) accumulates the real part.
  void add(int i, int j, Complex v);

  const CxMatrix& table() const { return table_; }

  Scalar norm() const { return table_.norm(); }
  Scalar max_symmetry_error() const;

  TwoLevelToeplitzCoeffs& operator+=(const TwoLevelToeplitzCoeffs& other);
  TwoLevelToeplitzCoeffs& operator*=(Scalar c);
  friend TwoLevelToeplitzCoeffs operator-(const TwoLevelToeplitzCoeffs& a,
                                          const TwoLevelToeplitzCoeffs& b);

 private:
  int num_pulses_ = 0;
  int num_elements_ = 0;
  CxMatrix table_;  // (2N-1) x (2M-1), entry (i+N-1, j+M-1) = u_{i,j}
};

/// Assembles the NM x NM Hermitian matrix S(T(u)).
/// Throws if the coefficient symmetry is violated beyond 1e-12 relative.
CxMatrix toeplitz_build(const TwoLevelToeplitzCoeffs& u);

/// Coefficients of a unit-power atom: u_{i,j} = exp(j 2 pi (i f_d + j f_s)),
/// so toeplitz_build(u) = s s^H for the matching space-time steering vector.
TwoLevelToeplitzCoeffs single_atom_coeffs(Scalar doppler_freq,
                                          Scalar spatial_freq, int num_pulses,
                                          int num_elements);

/// Adjoint of toeplitz_build: u_{i,j} = sum of the Hermitian part of Z over
/// the (i,j) two-level diagonal. With plain elementwise inner products,
/// <toeplitz_build(u), Z> = <u, toeplitz_adjoint(Z)> exactly for Hermitian Z
/// and in real part for general Z (toeplitz_build only produces Hermitian
/// matrices, so the anti-Hermitian component is invisible to it).
TwoLevelToeplitzCoeffs toeplitz_adjoint(const CxMatrix& z, int num_pulses,
                                        int num_elements);

/// Coefficients of the Frobenius-nearest Hermitian two-level-Toeplitz matrix:
/// per-diagonal means of Z, conjugate-symmetrized.
TwoLevelToeplitzCoeffs toeplitz_project_coeffs(const CxMatrix& z,
                                               int num_pulses,
                                               int num_elements);

/// Frobenius projection of Z onto the Hermitian two-level-Toeplitz subspace.
CxMatrix toeplitz_project(const CxMatrix& z, int num_pulses, int num_elements);

/// Frobenius-nearest PSD matrix: eigenvalues clipped at zero.
/// Throws if H deviates from Hermitian beyond 1e-8 relative.
CxMatrix psd_project(const CxMatrix& h);

/// Joint iterate (Phi, X_c, u) of the structured SDP; assemble() forms the
/// (K + NM) x (K + NM) constraint matrix [[Phi, X_c^H], [X_c, S(T(u))]].
struct StructuredPsdIterate {
  CxMatrix phi;  // K x K Hermitian
  CxMatrix x_c;  // NM x K
  TwoLevelToeplitzCoeffs u;

  CxMatrix assemble() const;
};

}  // namespace ramstap
