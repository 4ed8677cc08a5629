#pragma once

#include "ramstap/radar_scene.hpp"
#include "ramstap/types.hpp"

namespace ramstap {

struct SinrLossCurve {
  RealVector doppler_grid;
  RealVector loss_db;  // <= 0 up to numerical slack
};

struct SpectrumMap {
  RealVector doppler_grid;
  RealVector spatial_grid;
  RealMatrix power;  // linear, rows follow doppler_grid
};

/// Adaptive weight w = (R + loading I)^{-1} s. Throws if the loaded matrix
/// is numerically singular.
CxVector stap_weight(const HermitianCov& cov, const CxVector& steering,
                     Scalar loading);

/// SCNR loss in dB: 10 log10( sigma^2 |w^H s|^2 / (s^H s * w^H R w) ).
/// Invariant to nonzero complex scaling of w; never exceeds 0 dB.
Scalar sinr_loss_db(const CxVector& weight, const HermitianCov& exact,
                    const CxVector& steering, Scalar noise_power);

/// Loss over a Doppler grid at a fixed target spatial frequency; weights come
/// from the estimated covariance (with the given loading), losses are scored
/// against the exact covariance.
SinrLossCurve sinr_loss_curve(const HermitianCov& estimated,
                              const HermitianCov& exact,
                              const RadarConfig& config,
                              const RealVector& doppler_grid,
                              Scalar target_spatial_freq, Scalar loading);

/// Eigenvalues sorted descending, in dB, floored at -320 dB.
RealVector eigenspectrum_db(const HermitianCov& cov);

/// Minimum-variance (Capon) angle-Doppler power map:
/// P(f_d, f_s) = 1 / (s^H (R + loading I)^{-1} s).
SpectrumMap capon_spectrum(const HermitianCov& cov,
                           const RealVector& doppler_grid,
                           const RealVector& spatial_grid, int num_pulses,
                           int num_elements, Scalar loading);

/// `points` uniform frequencies over (-0.5, 0.5]: (k + 1) / points - 0.5.
RealVector uniform_frequency_grid(int points);

}  // namespace ramstap
