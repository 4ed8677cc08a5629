#include "ramstap/sdp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace ramstap {

namespace {

Scalar real_trace_product(const CxMatrix& w, const CxMatrix& s) {
  // tr(W S) for Hermitian W, S
  return w.cwiseProduct(s.conjugate()).sum().real();
}

}  // namespace

void SdpProblem::validate() const {
  if (num_pulses < 1 || num_elements < 1) {
    throw std::invalid_argument("SdpProblem: dimensions must be >= 1");
  }
  const int nm = num_pulses * num_elements;
  if (weight.rows() != nm || weight.cols() != nm) {
    throw std::invalid_argument("SdpProblem: weight must be NM x NM");
  }
  if (data.rows() != nm || data.cols() < 1) {
    throw std::invalid_argument("SdpProblem: data must be NM x K, K >= 1");
  }
  if (!(fidelity_radius_sq >= 0.0)) {
    throw std::invalid_argument("SdpProblem: fidelity_radius_sq must be >= 0");
  }
  const Scalar wscale = std::max<Scalar>(1.0, weight.norm());
  if ((weight - weight.adjoint()).norm() > 1e-10 * wscale) {
    throw std::invalid_argument("SdpProblem: weight must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CxMatrix> eig(weight, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * wscale) {
    throw std::invalid_argument("SdpProblem: weight must be PSD");
  }
}

void SolverSettings::validate() const {
  if (!(penalty > 0.0)) throw std::invalid_argument("SolverSettings: penalty must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("SolverSettings: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("SolverSettings: tolerance must be > 0");
  if (over_relaxation < 1.0 || over_relaxation >= 2.0) {
    throw std::invalid_argument("SolverSettings: over_relaxation must be in [1, 2)");
  }
}

SdpSolution solve_weighted_subproblem(const SdpProblem& problem,
                                      const SolverSettings& settings,
                                      AdmmState* state) {
  problem.validate();
  settings.validate();

  const int n = problem.num_pulses;
  const int m = problem.num_elements;
  const int nm = n * m;
  const int k = problem.num_snapshots();
  const int dim = k + nm;
  const Scalar rho = settings.penalty;
  const Scalar alpha = settings.over_relaxation;

  // Normalize to unit per-entry RMS; the solution map is homogeneous of
  // degree one in (X, sqrt(radius^2)), so results rescale exactly.
  Scalar scale = problem.data.norm() / std::sqrt(static_cast<Scalar>(nm * k));
  if (!(scale > 0.0)) scale = 1.0;
  const CxMatrix data = problem.data / scale;
  const Scalar radius = std::sqrt(problem.fidelity_radius_sq) / scale;

  CxMatrix z, y;
  if (state != nullptr && state->valid && state->psd_copy.rows() == dim) {
    z = state->psd_copy / scale;
    y = state->dual / scale;
  } else {
    z = CxMatrix::Zero(dim, dim);
    y = CxMatrix::Zero(dim, dim);
  }

  CxMatrix phi(k, k), xc(nm, k), a(dim, dim);
  TwoLevelToeplitzCoeffs u(n, m);
  Scalar primal = 0.0, dual = 0.0;
  int iterations = 0;
  bool converged = false;

  for (int it = 0; it < settings.max_iterations; ++it) {
    iterations = it + 1;

    // Structured update: blockwise closed forms against B = Z - Y.
    const CxMatrix b = z - y;
    phi = 0.5 * (b.topLeftCorner(k, k) + b.topLeftCorner(k, k).adjoint());
    phi.diagonal().array() -= Complex(1.0 / rho, 0.0);

    xc = b.bottomLeftCorner(nm, k);
    const Scalar dist = (xc - data).norm();
    if (dist > radius) {
      const Scalar shrink = (dist > 0.0) ? radius / dist : 0.0;
      xc = data + shrink * (xc - data);
    }

    u = toeplitz_project_coeffs(
        b.bottomRightCorner(nm, nm) - problem.weight / rho, n, m);

    a.topLeftCorner(k, k) = phi;
    a.bottomLeftCorner(nm, k) = xc;
    a.topRightCorner(k, nm) = xc.adjoint();
    a.bottomRightCorner(nm, nm) = toeplitz_build(u);

    // Over-relaxed PSD and dual updates.
    const CxMatrix relaxed = alpha * a + (1.0 - alpha) * z;
    const CxMatrix z_prev = std::move(z);
    z = psd_project(relaxed + y);
    y += relaxed - z;

    primal = (a - z).norm() /
             std::max<Scalar>(1.0, std::max(a.norm(), z.norm()));
    dual = rho * (z - z_prev).norm() / std::max<Scalar>(1.0, rho * y.norm());
    if (primal < settings.tolerance && dual < settings.tolerance) {
      converged = true;
      break;
    }
  }

  if (state != nullptr) {
    state->structured = a * scale;
    state->psd_copy = z * scale;
    state->dual = y * scale;
    state->valid = true;
  }

  SdpSolution solution;
  solution.iterate.phi = phi * scale;
  solution.iterate.x_c = xc * scale;
  u *= scale;
  solution.iterate.u = u;
  solution.objective =
      real_trace_product(problem.weight, toeplitz_build(solution.iterate.u)) +
      solution.iterate.phi.trace().real();
  solution.primal_residual = primal;
  solution.dual_residual = dual;
  solution.iterations = iterations;
  solution.converged = converged;
  return solution;
}

KktResiduals kkt_residuals(const SdpProblem& problem,
                           const SdpSolution& solution) {
  KktResiduals r;
  const CxMatrix assembled = solution.iterate.assemble();
  Eigen::SelfAdjointEigenSolver<CxMatrix> eig(assembled,
                                              Eigen::EigenvaluesOnly);
  r.psd_violation = std::max<Scalar>(0.0, -eig.eigenvalues().minCoeff());
  r.fidelity_slack = problem.fidelity_radius_sq -
                     (solution.iterate.x_c - problem.data).squaredNorm();

  // Distance of the PSD-projected copy from the structured affine family
  // (only the lower-right block is constrained; Phi and X_c are free).
  const CxMatrix psd_copy = psd_project(assembled);
  const int nm = problem.num_pulses * problem.num_elements;
  const CxMatrix block = psd_copy.bottomRightCorner(nm, nm);
  const CxMatrix fitted =
      toeplitz_project(block, problem.num_pulses, problem.num_elements);
  r.structure_violation =
      (block - fitted).norm() / std::max<Scalar>(1.0, psd_copy.norm());

  r.objective = solution.objective;
  return r;
}

}  // namespace ramstap
