#include "qwass/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <string>

#include "qwass/operator_core.hpp"

namespace qwass {

RealMatrix symplectic_form(int modes) {
  RealMatrix nu = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    nu(2 * i, 2 * i + 1) = 1.0;
    nu(2 * i + 1, 2 * i) = -1.0;
  }
  return nu;
}

namespace {

double min_admissibility_eigenvalue(const RealMatrix& sigma) {
  const int m = static_cast<int>(sigma.rows()) / 2;
  const Matrix h =
      sigma.cast<Complex>() + Complex(0.0, 1.0) * symplectic_form(m).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

GaussianState validate_gaussian(const RealMatrix& sigma, const RealVector& mu,
                                double tol) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0 ||
      sigma.rows() != mu.size())
    throw size_error("validate_gaussian: Sigma must be 2m x 2m with mu in "
                     "R^{2m}");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() >
      tol * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
    throw invariant_error("validate_gaussian: Sigma is not symmetric");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    gaussian_admissibility_error err(
        "validate_gaussian: Sigma not positive definite (eigenvalue " +
        std::to_string(es.eigenvalues().minCoeff()) + ")");
    err.offending_eigenvalue = es.eigenvalues().minCoeff();
    throw err;
  }
  const double lo = min_admissibility_eigenvalue(sigma);
  if (lo < -tol) {
    gaussian_admissibility_error err(
        "validate_gaussian: Sigma + i nu has eigenvalue " +
        std::to_string(lo));
    err.offending_eigenvalue = lo;
    throw err;
  }
  GaussianState s;
  s.modes = static_cast<int>(sigma.rows()) / 2;
  s.mu = mu;
  s.sigma = 0.5 * (sigma + sigma.transpose());
  return s;
}

bool gaussian_admissible(const RealMatrix& sigma, double tol) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  return min_admissibility_eigenvalue(sigma) >= -tol;
}

double wigner_pdf(const RealVector& mu, const RealMatrix& sigma,
                  const RealVector& z) {
  const int m = static_cast<int>(sigma.rows()) / 2;
  const Eigen::LLT<RealMatrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw invariant_error("wigner_pdf: Sigma is not positive definite");
  const RealVector d = z - mu;
  const double quad = d.dot(llt.solve(d));
  // det(L) = sqrt|Sigma|
  const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
  return std::exp(-0.5 * quad) / (std::pow(2.0 * M_PI, m) * sqrt_det);
}

double wigner_pdf(const GaussianState& state, const RealVector& z) {
  return wigner_pdf(state.mu, state.sigma, z);
}

Complex characteristic_fn(const GaussianState& state, const RealVector& xi) {
  const double quad = xi.dot((2.0 * state.sigma) * xi);
  return std::exp(Complex(-0.25 * quad, state.mu.dot(xi)));
}

std::pair<RealVector, RealMatrix> mixture_moments(const GaussianMixture& mix) {
  if (mix.weights.size() != mix.components.size() || mix.components.empty())
    throw size_error("mixture_moments: weights/components mismatch");
  double wsum = 0.0;
  for (double w : mix.weights) {
    if (w < 0.0) throw invariant_error("mixture_moments: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw invariant_error("mixture_moments: weights sum to " +
                          std::to_string(wsum));
  const Eigen::Index d = mix.components.front().mu.size();
  RealVector mu = RealVector::Zero(d);
  RealMatrix cov = RealMatrix::Zero(d, d);
  for (std::size_t i = 0; i < mix.weights.size(); ++i) {
    const GaussianState& c = mix.components[i];
    if (c.mu.size() != d)
      throw size_error("mixture_moments: inconsistent mode counts");
    mu += mix.weights[i] * c.mu;
    cov += mix.weights[i] * (c.sigma + c.mu * c.mu.transpose());
  }
  cov -= mu * mu.transpose();
  return {mu, cov};
}

double gaussian_metric(const GaussianState& state, const GaussianTangent& xi,
                       const GaussianTangent& eta) {
  const RealMatrix sx = lyapunov_solve(state.sigma, xi.sigma_dot);
  const RealMatrix se = lyapunov_solve(state.sigma, eta.sigma_dot);
  return xi.mu_dot.dot(eta.mu_dot) + (sx * state.sigma * se).trace();
}

double gaussian_path_action(const std::vector<GaussianState>& path) {
  if (path.size() < 2)
    throw size_error("gaussian_path_action: path needs at least 2 points");
  const double n = static_cast<double>(path.size() - 1);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const RealVector dmu = path[k + 1].mu - path[k].mu;
    const RealMatrix dsig = path[k + 1].sigma - path[k].sigma;
    const RealMatrix s = lyapunov_solve(path[k].sigma, dsig);
    total += n * (dmu.squaredNorm() + (s * path[k].sigma * s).trace());
  }
  return total;
}

namespace {

// Minimal uniform shift Sigma + t id restoring both spectral constraints.
RealMatrix project_feasible(const RealMatrix& sigma, double tol) {
  RealMatrix s = 0.5 * (sigma + sigma.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
  double t = std::max(0.0, tol - es.eigenvalues().minCoeff());
  const double lo = min_admissibility_eigenvalue(s);
  t = std::max(t, -lo);
  if (t > 0.0) s += (t + 1e-14) * RealMatrix::Identity(s.rows(), s.cols());
  return s;
}

double local_action(const std::vector<GaussianState>& path, int i) {
  const double n = static_cast<double>(path.size() - 1);
  double v = 0.0;
  for (int k : {i - 1, i}) {
    if (k < 0 || k + 1 >= static_cast<int>(path.size())) continue;
    const RealVector dmu = path[k + 1].mu - path[k].mu;
    const RealMatrix dsig = path[k + 1].sigma - path[k].sigma;
    const RealMatrix s = lyapunov_solve(path[k].sigma, dsig);
    v += n * (dmu.squaredNorm() + (s * path[k].sigma * s).trace());
  }
  return v;
}

}  // namespace

GaussianPath gaussian_geodesic(const GaussianState& a, const GaussianState& b,
                               int n_segments,
                               const GaussianGeodesicConfig& config) {
  if (a.modes != b.modes)
    throw size_error("gaussian_geodesic: mode count mismatch");
  const int n = n_segments;
  const Eigen::Index d2 = a.mu.size();
  std::vector<GaussianState> path(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    path[k].modes = a.modes;
    path[k].mu = (1.0 - t) * a.mu + t * b.mu;
    path[k].sigma = (1.0 - t) * a.sigma + t * b.sigma;  // feasible by convexity
  }

  GaussianPath out;
  double action = gaussian_path_action(path);
  out.action_trace.push_back(action);

  // Coordinates per interior node: mu (2m) then upper triangle of Sigma.
  std::vector<std::pair<int, int>> tri;
  for (Eigen::Index r = 0; r < d2; ++r)
    for (Eigen::Index c = r; c < d2; ++c)
      tri.emplace_back(static_cast<int>(r), static_cast<int>(c));
  const int nc = static_cast<int>(d2) + static_cast<int>(tri.size());

  auto perturb = [&](const GaussianState& st, int coord,
                     double eps) -> GaussianState {
    GaussianState t = st;
    if (coord < d2) {
      t.mu[coord] += eps;
    } else {
      auto [r, c] = tri[coord - d2];
      t.sigma(r, c) += eps;
      t.sigma(c, r) = t.sigma(r, c);
    }
    return t;
  };

  if (n >= 2) {
    if (config.monte_carlo) {
      std::mt19937_64 rng(config.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double scale = config.mc_step;
      for (int epoch = 0; epoch < config.mc_epochs; ++epoch) {
        for (int sweep = 0; sweep < config.mc_sweeps_per_epoch; ++sweep)
          for (int i = 1; i < n; ++i)
            for (int c = 0; c < nc; ++c) {
              const GaussianState saved = path[i];
              const double before = local_action(path, i);
              path[i] = perturb(path[i], c, scale * gauss(rng));
              // Rejection sampling: infeasible proposals are discarded.
              if (!gaussian_admissible(path[i].sigma, config.feasibility_tol)) {
                path[i] = saved;
                continue;
              }
              const double after = local_action(path, i);
              if (after < before)
                action += after - before;
              else
                path[i] = saved;
            }
        out.action_trace.push_back(action);
        scale *= config.mc_decay;
      }
    } else {
      const double fd = 1e-6;
      for (int iter = 0; iter < config.max_iters; ++iter) {
        // Local FD gradient over interior nodes.
        RealMatrix grad(n - 1, nc);
        for (int i = 1; i < n; ++i)
          for (int c = 0; c < nc; ++c) {
            const GaussianState saved = path[i];
            path[i] = perturb(saved, c, fd);
            const double fp = local_action(path, i);
            path[i] = perturb(saved, c, -fd);
            const double fm = local_action(path, i);
            path[i] = saved;
            grad(i - 1, c) = (fp - fm) / (2.0 * fd);
          }
        const double gnorm = grad.norm();
        if (gnorm == 0.0) break;

        // Diagonal preconditioner ~ Hessian scale of the quadratic action.
        const double pre = 4.0 * n;
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
          std::vector<GaussianState> trial = path;
          for (int i = 1; i < n; ++i)
            for (int c = 0; c < nc; ++c)
              trial[i] =
                  perturb(trial[i], c, -alpha / pre * grad(i - 1, c));
          bool feasible = true;
          for (int i = 1; i < n; ++i) {
            trial[i].sigma =
                project_feasible(trial[i].sigma, config.feasibility_tol);
            feasible = feasible &&
                       gaussian_admissible(trial[i].sigma,
                                           config.feasibility_tol * 10.0);
          }
          if (feasible) {
            const double a2 = gaussian_path_action(trial);
            if (a2 < action) {
              const double drop = action - a2;
              path = trial;
              action = a2;
              out.action_trace.push_back(action);
              accepted = true;
              if (drop < config.tol * std::max(1.0, action))
                iter = config.max_iters;
              break;
            }
          }
          alpha *= 0.5;
        }
        if (!accepted) break;
      }
    }
  }

  out.states = path;
  out.action = action;
  return out;
}

}  // namespace qwass
