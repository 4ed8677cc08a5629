#include "ramstap/stap_eval.hpp"

#include <cmath>
#include <stdexcept>

namespace ramstap {

namespace {
constexpr Scalar kDbFloor = -320.0;
}

CxVector stap_weight(const HermitianCov& cov, const CxVector& steering,
                     Scalar loading) {
  if (cov.matrix.rows() != steering.size()) {
    throw std::invalid_argument("stap_weight: dimension mismatch");
  }
  CxMatrix loaded = cov.matrix;
  loaded.diagonal().array() += Complex(loading, 0.0);
  const Eigen::LDLT<CxMatrix> ldlt(loaded);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("stap_weight: factorization failed");
  }
  CxVector w = ldlt.solve(steering);
  if (!w.allFinite() ||
      (loaded * w - steering).norm() > 1e-6 * steering.norm()) {
    throw std::runtime_error("stap_weight: loaded covariance is singular");
  }
  return w;
}

Scalar sinr_loss_db(const CxVector& weight, const HermitianCov& exact,
                    const CxVector& steering, Scalar noise_power) {
  if (weight.size() != steering.size() ||
      exact.matrix.rows() != weight.size()) {
    throw std::invalid_argument("sinr_loss_db: dimension mismatch");
  }
  const Scalar gain = std::norm(weight.dot(steering));  // |w^H s|^2
  const Scalar output_power = (weight.adjoint() * exact.matrix * weight)(0).real();
  if (!(output_power > 0.0)) {
    throw std::invalid_argument("sinr_loss_db: w^H R w is not positive");
  }
  const Scalar steering_norm_sq = steering.squaredNorm();
  return 10.0 *
         std::log10(noise_power * gain / (steering_norm_sq * output_power));
}

SinrLossCurve sinr_loss_curve(const HermitianCov& estimated,
                              const HermitianCov& exact,
                              const RadarConfig& config,
                              const RealVector& doppler_grid,
                              Scalar target_spatial_freq, Scalar loading) {
  if (doppler_grid.size() == 0) {
    throw std::invalid_argument("sinr_loss_curve: empty grid");
  }
  SinrLossCurve curve;
  curve.doppler_grid = doppler_grid;
  curve.loss_db.resize(doppler_grid.size());
  for (Eigen::Index i = 0; i < doppler_grid.size(); ++i) {
    const CxVector s =
        space_time_steering(doppler_grid(i), target_spatial_freq,
                            config.num_pulses, config.num_elements);
    const CxVector w = stap_weight(estimated, s, loading);
    curve.loss_db(i) = sinr_loss_db(w, exact, s, config.noise_power);
  }
  return curve;
}

RealVector eigenspectrum_db(const HermitianCov& cov) {
  Eigen::SelfAdjointEigenSolver<CxMatrix> eig(cov.matrix,
                                              Eigen::EigenvaluesOnly);
  RealVector db(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < db.size(); ++i) {
    const Scalar v = eig.eigenvalues()(db.size() - 1 - i);  // descending
    db(i) = v > 0.0 ? std::max(kDbFloor, 10.0 * std::log10(v)) : kDbFloor;
  }
  return db;
}

SpectrumMap capon_spectrum(const HermitianCov& cov,
                           const RealVector& doppler_grid,
                           const RealVector& spatial_grid, int num_pulses,
                           int num_elements, Scalar loading) {
  CxMatrix loaded = cov.matrix;
  loaded.diagonal().array() += Complex(loading, 0.0);
  const Eigen::LDLT<CxMatrix> ldlt(loaded);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("capon_spectrum: factorization failed");
  }
  SpectrumMap map;
  map.doppler_grid = doppler_grid;
  map.spatial_grid = spatial_grid;
  map.power.resize(doppler_grid.size(), spatial_grid.size());
  for (Eigen::Index i = 0; i < doppler_grid.size(); ++i) {
    for (Eigen::Index j = 0; j < spatial_grid.size(); ++j) {
      const CxVector s = space_time_steering(doppler_grid(i), spatial_grid(j),
                                             num_pulses, num_elements);
      const Scalar denom = s.dot(ldlt.solve(s)).real();
      if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw std::runtime_error("capon_spectrum: singular loaded covariance");
      }
      map.power(i, j) = 1.0 / denom;
    }
  }
  return map;
}

RealVector uniform_frequency_grid(int points) {
  if (points < 1) throw std::invalid_argument("uniform_frequency_grid: points must be >= 1");
  RealVector grid(points);
  for (int k = 0; k < points; ++k) {
    grid(k) = static_cast<Scalar>(k + 1) / points - 0.5;
  }
  return grid;
}

}  // namespace ramstap
