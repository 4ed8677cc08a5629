#include "ramstap/radar_scene.hpp"

#include <cmath>
#include <stdexcept>

#include "ramstap/rng.hpp"

namespace ramstap {

Scalar RadarConfig::elevation() const {
  return std::asin(platform_height / range);
}

void RadarConfig::validate() const {
  if (num_pulses < 1) throw std::invalid_argument("num_pulses must be >= 1");
  if (num_elements < 1) throw std::invalid_argument("num_elements must be >= 1");
  if (!(element_spacing > 0.0)) throw std::invalid_argument("element_spacing must be > 0");
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  if (!(prf > 0.0)) throw std::invalid_argument("prf must be > 0");
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be > 0");
  if (num_patches < 1) throw std::invalid_argument("num_patches must be >= 1");
  if (platform_height < 0.0) throw std::invalid_argument("platform_height must be >= 0");
  if (!(range > platform_height)) {
    throw std::invalid_argument("range must exceed platform_height");
  }
  if (!(range_resolution > 0.0)) throw std::invalid_argument("range_resolution must be > 0");
  if (!(platform_speed >= 0.0)) throw std::invalid_argument("platform_speed must be >= 0");
}

CxMatrix SnapshotSet::as_matrix() const {
  if (snapshots.empty()) return CxMatrix();
  CxMatrix x(snapshots.front().size(), count());
  for (int l = 0; l < count(); ++l) x.col(l) = snapshots[l];
  return x;
}

Scalar wrap_frequency(Scalar f) {
  Scalar w = f - std::floor(f + 0.5);
  if (w <= -0.5) w += 1.0;
  return w;
}

CxVector time_steering(Scalar doppler_freq, int num_pulses) {
  if (num_pulses < 1) throw std::invalid_argument("time_steering: num_pulses must be >= 1");
  CxVector s(num_pulses);
  for (int n = 0; n < num_pulses; ++n) {
    const Scalar phase = 2.0 * kPi * n * doppler_freq;
    s(n) = Complex(std::cos(phase), std::sin(phase));
  }
  return s;
}

CxVector space_steering(Scalar spatial_freq, int num_elements) {
  if (num_elements < 1) throw std::invalid_argument("space_steering: num_elements must be >= 1");
  return time_steering(spatial_freq, num_elements);
}

CxVector space_time_steering(Scalar doppler_freq, Scalar spatial_freq,
                             int num_pulses, int num_elements) {
  if (num_pulses < 1 || num_elements < 1) {
    throw std::invalid_argument("space_time_steering: dimensions must be >= 1");
  }
  const CxVector sd = time_steering(doppler_freq, num_pulses);
  const CxVector ss = space_steering(spatial_freq, num_elements);
  CxVector s(num_pulses * num_elements);
  for (int n = 0; n < num_pulses; ++n) {
    s.segment(n * num_elements, num_elements) = sd(n) * ss;
  }
  return s;
}

PatchFrequencies patch_frequencies(const RadarConfig& config, Scalar azimuth) {
  config.validate();
  const Scalar cos_elev = std::cos(config.elevation());
  const Scalar doppler = 2.0 * config.platform_speed /
                         (config.wavelength * config.prf) *
                         std::cos(azimuth) * cos_elev;
  const Scalar spatial = config.element_spacing / config.wavelength * cos_elev *
                         std::cos(azimuth - config.crab_angle);
  return {wrap_frequency(doppler), wrap_frequency(spatial)};
}

std::vector<ClutterPatch> make_clutter_scenario(const RadarConfig& config,
                                                std::uint64_t /*seed*/) {
  config.validate();
  const Scalar total_clutter_power =
      std::isinf(config.cnr_db) && config.cnr_db < 0.0
          ? 0.0
          : config.noise_power * std::pow(10.0, config.cnr_db / 10.0);
  const Scalar patch_power = total_clutter_power / config.num_patches;
  const Scalar elev = config.elevation();

  std::vector<ClutterPatch> patches;
  patches.reserve(config.num_patches);
  for (int i = 0; i < config.num_patches; ++i) {
    const Scalar azimuth = (i + 0.5) * kPi / config.num_patches;
    const PatchFrequencies f = patch_frequencies(config, azimuth);
    patches.push_back({azimuth, elev, f.doppler, f.spatial, patch_power});
  }
  return patches;
}

SnapshotSet draw_snapshots(const std::vector<ClutterPatch>& scenario,
                           const RadarConfig& config, int count,
                           std::uint64_t seed) {
  config.validate();
  if (count < 1) throw std::invalid_argument("draw_snapshots: count must be >= 1");
  const int nm = config.dof();

  std::vector<CxVector> steering;
  steering.reserve(scenario.size());
  for (const ClutterPatch& p : scenario) {
    steering.push_back(space_time_steering(p.doppler_freq, p.spatial_freq,
                                           config.num_pulses,
                                           config.num_elements));
  }

  RandomStream rng(seed);
  SnapshotSet set;
  set.seed = seed;
  set.snapshots.reserve(count);
  for (int l = 0; l < count; ++l) {
    CxVector x = CxVector::Zero(nm);
    for (std::size_t i = 0; i < scenario.size(); ++i) {
      x += rng.complex_gaussian(scenario[i].power) * steering[i];
    }
    for (int k = 0; k < nm; ++k) {
      x(k) += rng.complex_gaussian(config.noise_power);
    }
    set.snapshots.push_back(std::move(x));
  }
  return set;
}

HermitianCov exact_ccm(const std::vector<ClutterPatch>& scenario,
                       const RadarConfig& config) {
  config.validate();
  const int nm = config.dof();
  CxMatrix r = config.noise_power * CxMatrix::Identity(nm, nm);
  for (const ClutterPatch& p : scenario) {
    const CxVector s = space_time_steering(
        p.doppler_freq, p.spatial_freq, config.num_pulses, config.num_elements);
    r.selfadjointView<Eigen::Lower>().rankUpdate(s, p.power);
  }
  r = r.selfadjointView<Eigen::Lower>();
  return {std::move(r)};
}

HermitianCov smi_ccm(const SnapshotSet& set) {
  if (set.snapshots.empty()) {
    throw std::invalid_argument("smi_ccm: snapshot set is empty");
  }
  const Eigen::Index nm = set.snapshots.front().size();
  CxMatrix r = CxMatrix::Zero(nm, nm);
  for (const Snapshot& x : set.snapshots) {
    if (x.size() != nm) throw std::invalid_argument("smi_ccm: ragged snapshot set");
    r.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / set.count());
  }
  r = r.selfadjointView<Eigen::Lower>();
  return {std::move(r)};
}

int brennan_rank(const RadarConfig& config) {
  const Scalar beta =
      2.0 * config.platform_speed / (config.element_spacing * config.prf);
  return static_cast<int>(
      std::lround(config.num_pulses + (config.num_elements - 1) * beta));
}

}  // namespace ramstap
