#pragma once

#include <optional>
#include <vector>

#include "ramstap/radar_scene.hpp"
#include "ramstap/sdp_core.hpp"
#include "ramstap/toeplitz_ops.hpp"
#include "ramstap/types.hpp"

namespace ramstap {

struct RamSettings {
  Scalar zeta = 1.0;       // regularization floor inside
                           // (S(T(u)) + zeta I)^{-1}; default matches the
                           // unit noise floor
  Scalar zeta_decay = 1.0;   // per-iteration factor applied to the schedule;
                             // 1 keeps zeta fixed (the default)
  std::optional<Scalar> zeta_start;  // optional continuation start; when
                                     // unset the floor is used throughout
  int max_mm_iterations = 12;
  Scalar mm_tolerance = 1e-3;  // relative change of u between iterations
  std::optional<Scalar> epsilon_total;  // fidelity allowance; when unset,
                                        // epsilon_default(...) is used
  SolverSettings sdp;

  void validate() const;
};

/// Per-iteration record of the inner SDP solves.
struct SubproblemDiagnostics {
  int iterations = 0;
  Scalar primal_residual = 0.0;
  Scalar dual_residual = 0.0;
  bool converged = false;
  Scalar objective = 0.0;
};

struct RamResult {
  TwoLevelToeplitzCoeffs u;
  CxMatrix denoised;  // X_c, NM x K
  std::vector<Scalar> surrogate_objectives;  // ln|S(T(u))+zeta I| + tr(Phi),
                                             // one per MM iteration
  int mm_iterations = 0;
  bool converged = false;
  std::vector<SubproblemDiagnostics> sdp_diagnostics;
};

struct CcmEstimate {
  HermitianCov cov;
  int clutter_rank_estimate = 0;  // eigenvalues of S(T(u)) above 1e-3 * max
  Scalar noise_power_used = 0.0;
};

/// Default fidelity allowance: mean squared noise norm plus two standard
/// deviations per snapshot, summed over K:
///   K * sigma_n^2 * (NM + 2 sqrt(NM)).
Scalar epsilon_default(Scalar noise_power, int num_pulses, int num_elements,
                       int num_snapshots);

/// Atomic-norm solve: the single unweighted (W = I) subproblem.
RamResult anm_solve(const SnapshotSet& set, int num_pulses, int num_elements,
                    Scalar noise_power, const RamSettings& settings);

/// Reweighted atomic-norm solve: majorization-minimization over weighted
/// subproblems, W_0 = I and W_i = (S(T(u_i)) + zeta I)^{-1}. The recorded
/// log-det surrogate is nonincreasing when subproblems solve to tolerance.
RamResult ram_solve(const SnapshotSet& set, int num_pulses, int num_elements,
                    Scalar noise_power, const RamSettings& settings);

/// Covariance reconstruction from the recovered structure: eigendecompose
/// S(T(u)) = U Sigma U^H and average U diag(|U^H x_{c,l}|^2) U^H over the
/// denoised snapshots, plus the noise floor.
CcmEstimate ccm_from_toeplitz(const RamResult& result, Scalar noise_power);

}  // namespace ramstap
