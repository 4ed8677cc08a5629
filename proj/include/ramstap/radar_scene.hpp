#pragma once

#include <cstdint>
#include <vector>

#include "ramstap/types.hpp"

namespace ramstap {

/// Platform, array and waveform parameters of the airborne ULA radar.
struct RadarConfig {
  int num_pulses = 8;              // N, pulses per CPI
  int num_elements = 8;            // M, array elements
  Scalar element_spacing = 0.3335; // d [m]
  Scalar wavelength = 0.667;       // lambda [m]
  Scalar prf = 300.0;              // f_r [Hz]
  Scalar platform_speed = 50.0;    // v_p [m/s]
  Scalar platform_height = 9000.0; // H [m]
  Scalar crab_angle = 0.0;         // psi [rad]; 0 sidelooking, pi/2 forward-looking
  Scalar noise_power = 1.0;        // sigma_n^2, linear
  Scalar cnr_db = 40.0;            // clutter-to-noise ratio per channel [dB]
  int num_patches = 360;           // N_c clutter patches per range ring
  Scalar range = 20000.0;          // R_0 [m], range of the cell under test
  Scalar range_resolution = 37.5;  // [m]

  int dof() const { return num_pulses * num_elements; }

  /// Flat-earth elevation of the range ring: asin(H / R_0).
  Scalar elevation() const;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// One clutter patch: geometry, normalized frequencies, expected power E|a|^2.
struct ClutterPatch {
  Scalar azimuth = 0.0;      // [rad], measured from the flight axis
  Scalar elevation = 0.0;    // [rad]
  Scalar doppler_freq = 0.0; // cycles/pulse, in (-0.5, 0.5]
  Scalar spatial_freq = 0.0; // cycles/element, in (-0.5, 0.5]
  Scalar power = 0.0;        // linear
};

/// One NM-dimensional space-time sample.
using Snapshot = CxVector;

/// Ordered training samples plus the seed that generated them.
struct SnapshotSet {
  std::vector<Snapshot> snapshots;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(snapshots.size()); }

  /// Snapshots stacked as the NM x K matrix X.
  CxMatrix as_matrix() const;
};

struct PatchFrequencies {
  Scalar doppler = 0.0;
  Scalar spatial = 0.0;
};

/// Wraps a normalized frequency into the principal interval (-0.5, 0.5].
Scalar wrap_frequency(Scalar f);

/// Temporal steering vector [1, e^{j2pi f_d}, ..., e^{j2pi (N-1) f_d}].
CxVector time_steering(Scalar doppler_freq, int num_pulses);

/// Spatial steering vector [1, e^{j2pi f_s}, ..., e^{j2pi (M-1) f_s}].
CxVector space_steering(Scalar spatial_freq, int num_elements);

/// Space-time steering vector, time-major Kronecker product
/// time_steering(f_d) (x) space_steering(f_s); length N*M.
CxVector space_time_steering(Scalar doppler_freq, Scalar spatial_freq,
                             int num_pulses, int num_elements);

/// Normalized Doppler / spatial frequency of a patch at the given azimuth:
///   f_d = (2 v_p / (lambda f_r)) cos(phi) cos(theta)
///   f_s = (d / lambda) cos(theta) cos(phi - psi)
/// with theta the flat-earth elevation, both wrapped into (-0.5, 0.5].
PatchFrequencies patch_frequencies(const RadarConfig& config, Scalar azimuth);

/// N_c patches uniformly spaced over the forward semicircle about the array
/// axis, azimuth phi_i = (i + 0.5) * pi / N_c, so the direction cosine
/// cos(phi) sweeps (-1, 1) and the ridge is two-sided. Total clutter power
/// per channel is sigma_n^2 * 10^(cnr_db/10), split evenly across patches.
/// The seed is accepted for interface stability; patch placement is
/// deterministic.
std::vector<ClutterPatch> make_clutter_scenario(const RadarConfig& config,
                                                std::uint64_t seed = 0);

/// Draws `count` training snapshots x = sum_i a_i s_i + n with patch
/// amplitudes a_i ~ CN(0, power_i) redrawn per snapshot and per-element
/// noise CN(0, sigma_n^2). Deterministic in (scenario, config, count, seed).
SnapshotSet draw_snapshots(const std::vector<ClutterPatch>& scenario,
                           const RadarConfig& config, int count,
                           std::uint64_t seed);

/// Exact clutter-plus-noise covariance sum_i power_i s_i s_i^H + sigma_n^2 I.
HermitianCov exact_ccm(const std::vector<ClutterPatch>& scenario,
                       const RadarConfig& config);

/// Sample covariance (1/L) sum_l x_l x_l^H. Throws on an empty set.
HermitianCov smi_ccm(const SnapshotSet& set);

/// Sidelooking clutter-rank estimate round(N + (M-1) beta),
/// beta = 2 v_p / (d f_r).
int brennan_rank(const RadarConfig& config);

}  // namespace ramstap
