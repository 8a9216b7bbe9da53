#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwass/types.hpp"

namespace qwass {

/// nu = oplus_{i=1}^m [[0,1],[-1,0]].
RealMatrix symplectic_form(int modes);

/// Gaussian state in phase-space representation: mean mu in R^{2m} and
/// covariance Sigma > 0 with Sigma + i nu >= 0.
struct GaussianState {
  int modes = 1;
  RealVector mu;
  RealMatrix sigma;
};

struct gaussian_admissibility_error : invariant_error {
  using invariant_error::invariant_error;
  double offending_eigenvalue = 0.0;
};

/// Checks Sigma > 0 and min eig(Sigma + i nu) >= -tol; reports the offending
/// eigenvalue on failure.
GaussianState validate_gaussian(const RealMatrix& sigma, const RealVector& mu,
                                double tol = 1e-10);
bool gaussian_admissible(const RealMatrix& sigma, double tol = 1e-10);

/// Gaussian Wigner density exp(-(z-mu)^T Sigma^{-1} (z-mu)/2) / ((2pi)^m
/// sqrt|Sigma|). Defined for any SPD Sigma (no admissibility requirement).
double wigner_pdf(const RealVector& mu, const RealMatrix& sigma,
                  const RealVector& z);
double wigner_pdf(const GaussianState& state, const RealVector& z);

/// chi(xi) = exp(-<xi, gamma xi>/4 + i <d, xi>) with gamma = 2 Sigma, d = mu;
/// the classical characteristic function of the Wigner density.
Complex characteristic_fn(const GaussianState& state, const RealVector& xi);

struct GaussianMixture {
  std::vector<double> weights;
  std::vector<GaussianState> components;
};

/// Mean and covariance of the mixture:
///   mu = sum w_i mu_i,
///   Sigma = sum w_i Sigma_i + sum w_i mu_i mu_i^T - mu mu^T.
std::pair<RealVector, RealMatrix> mixture_moments(const GaussianMixture& mix);

struct GaussianTangent {
  RealVector mu_dot;
  RealMatrix sigma_dot;  // symmetric
};

/// g(xi, eta) = <mu_xi, mu_eta> + tr(S_xi Sigma S_eta) with {S, Sigma} = dSigma.
double gaussian_metric(const GaussianState& state, const GaussianTangent& xi,
                       const GaussianTangent& eta);

struct GaussianGeodesicConfig {
  int max_iters = 4000;
  double tol = 1e-12;
  bool monte_carlo = false;
  std::uint64_t seed = 0;  // mandatory for Monte-Carlo mode
  double mc_step = 0.3;
  double mc_decay = 0.95;
  int mc_epochs = 300;
  int mc_sweeps_per_epoch = 10;
  double feasibility_tol = 1e-10;
};

struct GaussianPath {
  std::vector<GaussianState> states;
  double action = 0.0;
  std::vector<double> action_trace;  // monotone non-increasing
  bool warning = false;
};

/// Discretized action N^{-3} sum ( ||mu_{i+1}-mu_i||^2 +
/// tr(S_i Sigma_i S_i) ), S_i the Lyapunov solve of Sigma_{i+1}-Sigma_i at
/// Sigma_i, scaled to the path-action normalization (factor N^4 / N^3 = N).
double gaussian_path_action(const std::vector<GaussianState>& path);

GaussianPath gaussian_geodesic(const GaussianState& a, const GaussianState& b,
                               int n_segments,
                               const GaussianGeodesicConfig& config = {});

}  // namespace qwass
