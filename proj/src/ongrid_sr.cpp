#include "ramstap/ongrid_sr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ramstap {

namespace {

RealVector dft_grid(int points) {
  std::vector<Scalar> values(points);
  for (int k = 0; k < points; ++k) {
    values[k] = wrap_frequency(static_cast<Scalar>(k) / points);
  }
  std::sort(values.begin(), values.end());
  return Eigen::Map<RealVector>(values.data(), points);
}

}  // namespace

SteeringDictionary build_dictionary(const RadarConfig& config,
                                    int oversample_spatial,
                                    int oversample_doppler) {
  config.validate();
  if (oversample_spatial < 1 || oversample_doppler < 1) {
    throw std::invalid_argument("build_dictionary: oversampling must be >= 1");
  }
  SteeringDictionary dict;
  dict.num_pulses = config.num_pulses;
  dict.num_elements = config.num_elements;
  dict.oversample_doppler = oversample_doppler;
  dict.oversample_spatial = oversample_spatial;
  dict.doppler_grid = dft_grid(oversample_doppler * config.num_pulses);
  dict.spatial_grid = dft_grid(oversample_spatial * config.num_elements);

  const int nd = static_cast<int>(dict.doppler_grid.size());
  const int ns = static_cast<int>(dict.spatial_grid.size());
  dict.atoms.resize(config.dof(), nd * ns);
  for (int p = 0; p < nd; ++p) {
    for (int q = 0; q < ns; ++q) {
      dict.atoms.col(dict.flat_index(p, q)) = space_time_steering(
          dict.doppler_grid(p), dict.spatial_grid(q), config.num_pulses,
          config.num_elements);
    }
  }
  return dict;
}

void FocussSettings::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("FocussSettings: lambda must be >= 0");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("FocussSettings: p must be in (0, 1]");
  if (max_iterations < 1) throw std::invalid_argument("FocussSettings: max_iterations must be >= 1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("FocussSettings: tolerance must be >= 0");
}

AngleDopplerProfile focuss_solve(const SteeringDictionary& dict,
                                 const SnapshotSet& set,
                                 const FocussSettings& settings) {
  settings.validate();
  const CxMatrix x = set.as_matrix();
  const int nm = dict.num_pulses * dict.num_elements;
  if (x.rows() != nm || x.cols() < 1) {
    throw std::invalid_argument("focuss_solve: snapshot/dictionary mismatch");
  }
  const int atoms = dict.size();

  AngleDopplerProfile profile;
  // matched-filter start
  profile.coefficients = dict.atoms.adjoint() * x / static_cast<Scalar>(nm);

  CxMatrix weighted(nm, atoms);
  for (int it = 0; it < settings.max_iterations; ++it) {
    profile.iterations = it + 1;

    // w_i = ||a_i||^(1 - p/2) over the row (shared across snapshots)
    RealVector w(atoms);
    for (int i = 0; i < atoms; ++i) {
      w(i) = std::pow(profile.coefficients.row(i).norm(), 1.0 - settings.p / 2.0);
    }

    weighted = dict.atoms * w.asDiagonal();
    CxMatrix gram = weighted * weighted.adjoint();
    gram.diagonal().array() += Complex(settings.lambda, 0.0);
    const CxMatrix rhs = gram.ldlt().solve(x);
    CxMatrix next = w.asDiagonal() * (weighted.adjoint() * rhs);

    const Scalar denom = std::max<Scalar>(profile.coefficients.norm(), 1e-12);
    const Scalar rel = (next - profile.coefficients).norm() / denom;
    profile.coefficients = std::move(next);
    if (rel < settings.tolerance) {
      profile.converged = true;
      break;
    }
  }
  return profile;
}

HermitianCov ongrid_ccm(const AngleDopplerProfile& profile,
                        const SteeringDictionary& dict, Scalar noise_power) {
  const int atoms = dict.size();
  if (profile.coefficients.rows() != atoms) {
    throw std::invalid_argument("ongrid_ccm: profile/dictionary mismatch");
  }
  const int nm = dict.num_pulses * dict.num_elements;
  const int k = static_cast<int>(profile.coefficients.cols());

  const RealVector peak_sq = profile.coefficients.cwiseAbs2().rowwise().maxCoeff();
  const Scalar cut = 1e-6 * peak_sq.maxCoeff();

  CxMatrix r = noise_power * CxMatrix::Identity(nm, nm);
  for (int i = 0; i < atoms; ++i) {
    if (peak_sq(i) <= cut || peak_sq(i) == 0.0) continue;
    const Scalar power =
        profile.coefficients.row(i).squaredNorm() / static_cast<Scalar>(k);
    r.selfadjointView<Eigen::Lower>().rankUpdate(dict.atoms.col(i), power);
  }
  r = r.selfadjointView<Eigen::Lower>();
  return {std::move(r)};
}

}  // namespace ramstap
