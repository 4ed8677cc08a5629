#pragma once

#include "ramstap/radar_scene.hpp"
#include "ramstap/types.hpp"

namespace ramstap {

/// Discretized space-time steering dictionary over a uniform angle-Doppler
/// grid. Column (p, q) = space_time_steering(doppler_grid[p], spatial_grid[q])
/// at flat index p * N_s + q (Doppler-major, matching the Kronecker order).
struct SteeringDictionary {
  CxMatrix atoms;           // NM x (N_d * N_s)
  RealVector doppler_grid;  // N_d = oversample_doppler * N points, ascending
  RealVector spatial_grid;  // N_s = oversample_spatial * M points, ascending
  int oversample_doppler = 1;
  int oversample_spatial = 1;
  int num_pulses = 0;
  int num_elements = 0;

  int size() const { return static_cast<int>(atoms.cols()); }
  int flat_index(int doppler_idx, int spatial_idx) const {
    return doppler_idx * static_cast<int>(spatial_grid.size()) + spatial_idx;
  }
};

/// DFT-style grids wrapped into (-0.5, 0.5] (they always contain 0, and 0.5
/// when the point count is even), sorted ascending.
SteeringDictionary build_dictionary(const RadarConfig& config,
                                    int oversample_spatial,
                                    int oversample_doppler);

struct FocussSettings {
  Scalar lambda = 1e-4;   // Tikhonov regularization of the weighted system
  Scalar p = 0.8;         // sparsity exponent, 0 < p <= 1
  int max_iterations = 30;
  Scalar tolerance = 1e-4;  // relative change stop

  void validate() const;
};

/// Recovered clutter angle-Doppler profile. Complex coefficients are kept
/// (phases matter for diagnostics); magnitudes() gives the |a| view.
struct AngleDopplerProfile {
  CxMatrix coefficients;  // (N_d * N_s) x K
  int iterations = 0;
  bool converged = false;

  RealMatrix magnitudes() const { return coefficients.cwiseAbs(); }
};

/// Regularized FOCUSS (iteratively reweighted least squares for the l_p
/// relaxation), initialized from the matched filter Psi^H X / NM. For K > 1
/// the row-norm weights are shared across snapshots (MMV variant).
AngleDopplerProfile focuss_solve(const SteeringDictionary& dict,
                                 const SnapshotSet& set,
                                 const FocussSettings& settings);

/// On-grid covariance reconstruction: noise floor plus the profile's
/// grid-point powers averaged over snapshots. Profile entries below 1e-6 of
/// the peak energy are truncated to keep the sum sparse.
HermitianCov ongrid_ccm(const AngleDopplerProfile& profile,
                        const SteeringDictionary& dict, Scalar noise_power);

}  // namespace ramstap
