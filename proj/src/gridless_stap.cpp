#include "ramstap/gridless_stap.hpp"

#include <cmath>
#include <stdexcept>

namespace ramstap {

void RamSettings::validate() const {
  if (!(zeta > 0.0)) throw std::invalid_argument("RamSettings: zeta must be > 0");
  if (!(zeta_decay > 0.0) || zeta_decay > 1.0) {
    throw std::invalid_argument("RamSettings: zeta_decay must be in (0, 1]");
  }
  if (zeta_start.has_value() && !(*zeta_start > 0.0)) {
    throw std::invalid_argument("RamSettings: zeta_start must be > 0");
  }
  if (max_mm_iterations < 1) {
    throw std::invalid_argument("RamSettings: max_mm_iterations must be >= 1");
  }
  if (!(mm_tolerance >= 0.0)) {
    throw std::invalid_argument("RamSettings: mm_tolerance must be >= 0");
  }
  if (epsilon_total.has_value() && !(*epsilon_total >= 0.0)) {
    throw std::invalid_argument("RamSettings: epsilon_total must be >= 0");
  }
  sdp.validate();
}

Scalar epsilon_default(Scalar noise_power, int num_pulses, int num_elements,
                       int num_snapshots) {
  const Scalar nm = static_cast<Scalar>(num_pulses) * num_elements;
  return num_snapshots * noise_power * (nm + 2.0 * std::sqrt(nm));
}

namespace {

RamResult run_mm(const SnapshotSet& set, int num_pulses, int num_elements,
                 Scalar noise_power, const RamSettings& settings,
                 int mm_iterations) {
  settings.validate();
  const int nm = num_pulses * num_elements;
  const CxMatrix x = set.as_matrix();
  if (x.rows() != nm || x.cols() < 1) {
    throw std::invalid_argument("ram_solve: snapshots are not NM-dimensional");
  }
  const int k = static_cast<int>(x.cols());

  SdpProblem problem;
  problem.data = x;
  problem.num_pulses = num_pulses;
  problem.num_elements = num_elements;
  problem.fidelity_radius_sq = settings.epsilon_total.value_or(
      epsilon_default(noise_power, num_pulses, num_elements, k));
  problem.weight = CxMatrix::Identity(nm, nm);

  RamResult result;
  result.u = TwoLevelToeplitzCoeffs(num_pulses, num_elements);
  result.denoised = CxMatrix::Zero(nm, k);
  result.converged = false;

  AdmmState state;
  TwoLevelToeplitzCoeffs u_prev(num_pulses, num_elements);
  bool have_prev = false;
  bool failed = false;
  // Optional continuation: zeta may start above the floor and shrink by
  // zeta_decay per iteration. The recorded surrogate uses the iteration's
  // own zeta; with a nonincreasing schedule the sequence stays monotone.
  Scalar zeta_i = std::max(settings.zeta_start.value_or(settings.zeta),
                           settings.zeta);

  for (int it = 0; it < mm_iterations; ++it) {
    SdpSolution sub = solve_weighted_subproblem(problem, settings.sdp, &state);

    result.u = sub.iterate.u;
    result.denoised = sub.iterate.x_c;
    result.mm_iterations = it + 1;
    result.sdp_diagnostics.push_back({sub.iterations, sub.primal_residual,
                                      sub.dual_residual, sub.converged,
                                      sub.objective});

    Eigen::SelfAdjointEigenSolver<CxMatrix> eig(toeplitz_build(sub.iterate.u));
    const RealVector lambda = eig.eigenvalues().cwiseMax(0.0);

    Scalar logdet = 0.0;
    for (int i = 0; i < lambda.size(); ++i) {
      logdet += std::log(lambda(i) + zeta_i);
    }
    result.surrogate_objectives.push_back(logdet +
                                          sub.iterate.phi.trace().real());

    if (!sub.iterate.x_c.allFinite() || !sub.iterate.u.table().allFinite()) {
      failed = true;  // subproblem failure: return best-so-far
      break;
    }

    if (have_prev) {
      const Scalar rel = (sub.iterate.u - u_prev).norm() /
                         std::max<Scalar>(u_prev.norm(), 1e-12);
      if (rel < settings.mm_tolerance) break;
    }
    u_prev = sub.iterate.u;
    have_prev = true;

    if (it + 1 < mm_iterations) {
      // Reweight: W = (S(T(u)) + zeta_i I)^{-1}, formed from the clipped
      // eigendecomposition so it stays Hermitian PSD.
      RealVector inv = (lambda.array() + zeta_i).inverse();
      problem.weight = eig.eigenvectors() * inv.asDiagonal() *
                       eig.eigenvectors().adjoint();
      problem.weight = 0.5 * (problem.weight + problem.weight.adjoint());
      zeta_i = std::max(settings.zeta, zeta_i * settings.zeta_decay);
    }
  }
  result.converged = !failed;
  return result;
}

}  // namespace

RamResult anm_solve(const SnapshotSet& set, int num_pulses, int num_elements,
                    Scalar noise_power, const RamSettings& settings) {
  return run_mm(set, num_pulses, num_elements, noise_power, settings, 1);
}

RamResult ram_solve(const SnapshotSet& set, int num_pulses, int num_elements,
                    Scalar noise_power, const RamSettings& settings) {
  return run_mm(set, num_pulses, num_elements, noise_power, settings,
                settings.max_mm_iterations);
}

CcmEstimate ccm_from_toeplitz(const RamResult& result, Scalar noise_power) {
  const CxMatrix s = toeplitz_build(result.u);
  const int nm = static_cast<int>(s.rows());
  const int k = static_cast<int>(result.denoised.cols());
  if (result.denoised.rows() != nm || k < 1) {
    throw std::invalid_argument("ccm_from_toeplitz: inconsistent result");
  }

  Eigen::SelfAdjointEigenSolver<CxMatrix> eig(s);
  const RealVector lambda = eig.eigenvalues().cwiseMax(0.0);
  const CxMatrix& basis = eig.eigenvectors();

  RealVector mean_power = RealVector::Zero(nm);
  for (int l = 0; l < k; ++l) {
    mean_power += (basis.adjoint() * result.denoised.col(l)).cwiseAbs2();
  }
  mean_power /= static_cast<Scalar>(k);

  CxMatrix r = basis * mean_power.asDiagonal() * basis.adjoint();
  r = 0.5 * (r + r.adjoint());
  r.diagonal().array() += Complex(noise_power, 0.0);

  CcmEstimate estimate;
  estimate.cov = HermitianCov{std::move(r)};
  estimate.noise_power_used = noise_power;
  const Scalar top = lambda.maxCoeff();
  estimate.clutter_rank_estimate =
      top > 0.0 ? static_cast<int>((lambda.array() > 1e-3 * top).count()) : 0;
  return estimate;
}

}  // namespace ramstap
