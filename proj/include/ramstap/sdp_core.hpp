#pragma once

#include "ramstap/toeplitz_ops.hpp"
#include "ramstap/types.hpp"

namespace ramstap {

/// Weighted structured SDP of one reweighting step:
///   minimize    tr(W S(T(u))) + tr(Phi)
///   subject to  [[Phi, X_c^H], [X_c, S(T(u))]] >= 0,
///               ||X_c - X||_F^2 <= fidelity_radius_sq.
struct SdpProblem {
  CxMatrix weight;               // W, NM x NM Hermitian PSD
  CxMatrix data;                 // X, NM x K
  Scalar fidelity_radius_sq = 0; // total squared-Frobenius allowance
  int num_pulses = 0;            // N
  int num_elements = 0;          // M

  int num_snapshots() const { return static_cast<int>(data.cols()); }
  void validate() const;  // throws std::invalid_argument
};

struct SolverSettings {
  Scalar penalty = 1.0;          // ADMM rho
  int max_iterations = 5000;
  Scalar tolerance = 1e-6;       // relative primal/dual residual target
  Scalar over_relaxation = 1.6;  // alpha in [1, 2)

  void validate() const;
};

struct SdpSolution {
  StructuredPsdIterate iterate;
  Scalar objective = 0.0;
  Scalar primal_residual = 0.0;
  Scalar dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Reusable ADMM state for warm starting consecutive solves that share the
/// same data and dimensions (only the weight W may differ). Stored in the
/// problem's own units.
struct AdmmState {
  CxMatrix structured;  // A(V) at exit
  CxMatrix psd_copy;    // Z
  CxMatrix dual;        // scaled dual Y
  bool valid = false;
};

/// ADMM over a structured/PSD splitting: the structured variable carries
/// (Phi, X_c, u) with the fidelity ball enforced by Euclidean projection of
/// X_c and the linear objective folded into the closed-form updates; the PSD
/// copy is maintained by eigenvalue clipping. The problem is internally
/// normalized by the data scale (solutions are positively homogeneous of
/// degree one in (X, sqrt(fidelity_radius_sq))).
///
/// If `state` is non-null and valid it seeds the iteration; on return it
/// holds the final state.
SdpSolution solve_weighted_subproblem(const SdpProblem& problem,
                                      const SolverSettings& settings,
                                      AdmmState* state = nullptr);

/// Feasibility and optimality diagnostics of a returned iterate.
struct KktResiduals {
  Scalar psd_violation = 0.0;       // max(0, -lambda_min(assembled))
  Scalar fidelity_slack = 0.0;      // radius^2 - ||X_c - X||_F^2 (>= 0 feasible)
  Scalar structure_violation = 0.0; // distance of the PSD copy from the
                                    // structured affine family, relative
  Scalar objective = 0.0;
};

KktResiduals kkt_residuals(const SdpProblem& problem,
                           const SdpSolution& solution);

}  // namespace ramstap
