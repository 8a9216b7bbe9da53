#include "qwass/flows.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <random>

#include "qwass/operator_core.hpp"

namespace qwass {

namespace {

RealVector natural_direction(const ParametricModel& model,
                             const RealVector& theta,
                             const Objective& objective) {
  const RealMatrix gw = wasserstein_info_matrix(model, theta);
  const RealVector g = objective.gradient(theta);
  return gw.ldlt().solve(model.g_theta * g);
}

}  // namespace

FlowTrajectory natural_gradient_flow(const ParametricModel& model,
                                     const RealVector& theta0,
                                     const Objective& objective, double tau,
                                     int n_steps) {
  if (!model.valid_at(theta0))
    throw invariant_error("natural_gradient_flow: theta0 outside the domain");
  FlowTrajectory tr;
  RealVector theta = theta0;
  tr.times.push_back(0.0);
  tr.thetas.push_back(theta);
  tr.diagnostics.push_back(objective.value(theta));
  double t = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    const RealVector dir = natural_direction(model, theta, objective);
    double step = tau;
    RealVector trial = theta - step * dir;
    int halvings = 0;
    while (!model.valid_at(trial) && halvings < 30) {
      step *= 0.5;
      trial = theta - step * dir;
      ++halvings;
    }
    if (halvings == 30) {
      tr.warning = true;
      tr.domain_exit = true;
      break;
    }
    theta = trial;
    t += step;
    tr.times.push_back(t);
    tr.thetas.push_back(theta);
    tr.diagnostics.push_back(objective.value(theta));
  }
  return tr;
}

namespace {

// One segment of the discretized action, N * <dtheta, G_W(point) dtheta>.
double segment_action(const ParametricModel& model, ActionScheme scheme,
                      const RealVector& a, const RealVector& b, double n) {
  const RealVector d = b - a;
  const RealVector pt = scheme == ActionScheme::LeftPoint
                            ? a
                            : RealVector(0.5 * (a + b));
  if (!model.valid_at(pt))
    throw invariant_error("geodesic_bvp: evaluation point left the domain");
  const RealMatrix gw = wasserstein_info_matrix(model, pt);
  return n * d.dot(gw * d);
}

double total_action(const ParametricModel& model, ActionScheme scheme,
                    const std::vector<RealVector>& path) {
  const double n = static_cast<double>(path.size() - 1);
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    s += segment_action(model, scheme, path[k], path[k + 1], n);
  return s;
}

}  // namespace

BvpResult geodesic_bvp(const ParametricModel& model, const RealVector& theta0,
                       const RealVector& theta1, int n_segments,
                       const BvpConfig& config) {
  if (!model.valid_at(theta0) || !model.valid_at(theta1))
    throw invariant_error("geodesic_bvp: endpoint outside the domain");
  const int n = n_segments;
  const int d = model.dim_params;
  std::vector<RealVector> path(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    path[k] = (1.0 - t) * theta0 + t * theta1;
  }

  BvpResult result;
  result.converged = false;
  double action = total_action(model, config.scheme, path);
  result.action_trace.push_back(action);

  if (n >= 2 && (theta1 - theta0).norm() > 0.0) {
    if (config.mode == OptimizerMode::MonteCarlo) {
      std::mt19937_64 rng(config.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double scale = config.mc_step;
      for (int epoch = 0; epoch < config.mc_epochs; ++epoch) {
        for (int sweep = 0; sweep < config.mc_sweeps_per_epoch; ++sweep) {
          for (int i = 1; i < n; ++i)
            for (int a = 0; a < d; ++a) {
              RealVector trial = path[i];
              trial[a] += scale * gauss(rng);
              if (!model.valid_at(trial)) continue;
              const double nn = static_cast<double>(n);
              const double before =
                  segment_action(model, config.scheme, path[i - 1], path[i],
                                 nn) +
                  segment_action(model, config.scheme, path[i], path[i + 1],
                                 nn);
              const double after =
                  segment_action(model, config.scheme, path[i - 1], trial,
                                 nn) +
                  segment_action(model, config.scheme, trial, path[i + 1], nn);
              if (after < before) {
                path[i] = trial;
                action += after - before;
              }
            }
        }
        result.action_trace.push_back(action);
        scale *= config.mc_decay;
      }
      result.converged = true;
    } else {
      const double nn = static_cast<double>(n);
      const int m = (n - 1) * d;
      for (int iter = 0; iter < config.max_iters; ++iter) {
        // Local finite-difference gradient over interior points.
        RealVector grad(m);
        for (int i = 1; i < n; ++i)
          for (int a = 0; a < d; ++a) {
            const double h = 1e-6 * std::max(1.0, std::abs(path[i][a]));
            RealVector tp = path[i], tm = path[i];
            tp[a] += h;
            tm[a] -= h;
            const double fp =
                segment_action(model, config.scheme, path[i - 1], tp, nn) +
                segment_action(model, config.scheme, tp, path[i + 1], nn);
            const double fm =
                segment_action(model, config.scheme, path[i - 1], tm, nn) +
                segment_action(model, config.scheme, tm, path[i + 1], nn);
            grad[(i - 1) * d + a] = (fp - fm) / (2.0 * h);
          }

        // Frozen-metric block-tridiagonal Hessian as preconditioner.
        RealMatrix hess = RealMatrix::Zero(m, m);
        std::vector<RealMatrix> gk(n);
        for (int k = 0; k < n; ++k) {
          const RealVector pt = config.scheme == ActionScheme::LeftPoint
                                    ? path[k]
                                    : RealVector(0.5 * (path[k] + path[k + 1]));
          gk[k] = wasserstein_info_matrix(model, pt);
        }
        for (int i = 1; i < n; ++i) {
          hess.block((i - 1) * d, (i - 1) * d, d, d) =
              2.0 * nn * (gk[i - 1] + gk[i]);
          if (i + 1 < n) {
            hess.block((i - 1) * d, i * d, d, d) = -2.0 * nn * gk[i];
            hess.block(i * d, (i - 1) * d, d, d) = -2.0 * nn * gk[i];
          }
        }
        const RealVector dir = hess.ldlt().solve(grad);

        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
          std::vector<RealVector> trial = path;
          bool feasible = true;
          for (int i = 1; i < n; ++i) {
            trial[i] = path[i] - alpha * dir.segment((i - 1) * d, d);
            feasible = feasible && model.valid_at(trial[i]);
          }
          if (feasible) {
            const double a2 = total_action(model, config.scheme, trial);
            if (a2 < action) {
              path = trial;
              const double drop = action - a2;
              action = a2;
              result.action_trace.push_back(action);
              accepted = true;
              if (drop < config.tol * std::max(1.0, std::abs(action)))
                result.converged = true;
              break;
            }
          }
          alpha *= 0.5;
        }
        if (!accepted) {
          result.converged = true;
          break;
        }
        if (result.converged) break;
      }
    }
  } else {
    result.converged = true;
  }

  result.action = action;
  result.trajectory.thetas = path;
  for (int k = 0; k <= n; ++k)
    result.trajectory.times.push_back(static_cast<double>(k) / n);
  result.trajectory.diagnostics.assign(n + 1, action);
  result.trajectory.warning = !result.converged;
  return result;
}

namespace {

double hamiltonian(const ParametricModel& model, const RealVector& theta,
                   const RealVector& p) {
  const RealMatrix gw = wasserstein_info_matrix(model, theta);
  return 0.5 * p.dot(gw.ldlt().solve(p));
}

}  // namespace

FlowTrajectory geodesic_ivp(const ParametricModel& model,
                            const RealVector& theta0, const RealVector& p0,
                            double t_end, double dt) {
  if (!model.valid_at(theta0))
    throw invariant_error("geodesic_ivp: theta0 outside the domain");
  const int d = model.dim_params;
  auto deriv = [&](const RealVector& th, const RealVector& p, RealVector& dth,
                   RealVector& dp) -> bool {
    if (!model.valid_at(th)) return false;
    const RealMatrix gw = wasserstein_info_matrix(model, th);
    dth = gw.ldlt().solve(p);
    dp = RealVector(d);
    for (int a = 0; a < d; ++a) {
      const double h = 1e-6 * std::max(1.0, std::abs(th[a]));
      RealVector tp = th, tm = th;
      tp[a] += h;
      tm[a] -= h;
      if (!model.valid_at(tp) || !model.valid_at(tm)) return false;
      dp[a] = -(hamiltonian(model, tp, p) - hamiltonian(model, tm, p)) /
              (2.0 * h);
    }
    return true;
  };

  FlowTrajectory tr;
  RealVector theta = theta0, p = p0;
  double t = 0.0;
  tr.times.push_back(t);
  tr.thetas.push_back(theta);
  tr.diagnostics.push_back(hamiltonian(model, theta, p));
  const int n_steps = static_cast<int>(std::round(t_end / dt));
  RealVector k1t(d), k1p(d), k2t(d), k2p(d), k3t(d), k3p(d), k4t(d), k4p(d);
  for (int k = 0; k < n_steps; ++k) {
    bool ok = deriv(theta, p, k1t, k1p) &&
              deriv(theta + 0.5 * dt * k1t, p + 0.5 * dt * k1p, k2t, k2p) &&
              deriv(theta + 0.5 * dt * k2t, p + 0.5 * dt * k2p, k3t, k3p) &&
              deriv(theta + dt * k3t, p + dt * k3p, k4t, k4p);
    if (ok) {
      const RealVector th2 =
          theta + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
      ok = model.valid_at(th2);
      if (ok) {
        theta = th2;
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      }
    }
    if (!ok) {
      tr.domain_exit = true;
      tr.warning = true;
      break;
    }
    t += dt;
    tr.times.push_back(t);
    tr.thetas.push_back(theta);
    tr.diagnostics.push_back(hamiltonian(model, theta, p));
  }
  return tr;
}

namespace {

double transport_norm2(const TransportStructure& s, const Matrix& rho,
                       const Matrix& phi, const NumericSettings& ns) {
  const double ts = trace_scale(structure_convention(s), rho.rows());
  double total = 0.0;
  const int m = structure_term_count(s);
  for (int j = 0; j < m; ++j) {
    const Matrix g = structure_derivative(s, phi, j);
    const Matrix lg = structure_multiply(s, rho, g, j, false, ns);
    total += ts * (g.adjoint() * lg).trace().real();
  }
  return total;
}

// dt * ( ||M_k||^2_{rho^{-1}} + beta^2 I(rho_bar) ) for one segment, using the
// midpoint state and the quadratic form <X, (-Delta)^{-1} X>.
double sbp_segment(const TransportStructure& s, const Matrix& a,
                   const Matrix& b, double n, double beta, const Matrix& sigma,
                   const NumericSettings& ns) {
  const Matrix mid = 0.5 * (a + b);
  const Matrix xdot = (b - a) * n;
  TransportLaplacian lap = laplacian_build(mid, s, ns);
  const RealVector c = lap.basis.coefficients(xdot);
  double val = (1.0 / n) * c.dot(lap.pinv * c);
  if (beta != 0.0)
    val += (1.0 / n) * beta * beta * fisher_information(mid, sigma, s, ns);
  return val;
}

}  // namespace

double sbp_functional(const TransportStructure& s,
                      const std::vector<Matrix>& states, double beta,
                      const Matrix& sigma, const NumericSettings& ns) {
  if (states.size() < 2)
    throw size_error("sbp_functional: path needs at least 2 states");
  const double n = static_cast<double>(states.size() - 1);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < states.size(); ++k)
    total += sbp_segment(s, states[k], states[k + 1], n, beta, sigma, ns);
  return total;
}

BridgePath sbp_solve(const TransportStructure& s, const DensityOperator& rho_in,
                     const DensityOperator& rho_fi, double beta, int n_segments,
                     const SbpConfig& config, const NumericSettings& ns) {
  rho_in.require_faithful(ns.eps_faithful, "sbp_solve(rho_in)");
  rho_fi.require_faithful(ns.eps_faithful, "sbp_solve(rho_fi)");
  const int n = n_segments;
  const OperatorBasis basis = structure_basis(s);
  const int nb = basis.size();
  const Eigen::Index dim = rho_in.dim();
  const Matrix sigma = Matrix::Identity(dim, dim) *
                       (rho_in.mat.trace() / static_cast<double>(dim));

  std::vector<Matrix> states(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    states[k] = (1.0 - t) * rho_in.mat + t * rho_fi.mat;
  }

  BridgePath out;
  out.beta = beta;
  double value = sbp_functional(s, states, beta, sigma, ns);
  out.value_trace.push_back(value);

  auto project_faithful = [&](Matrix& rho) {
    auto [lam, u] = eigh(rho, 1e-8);
    if (lam.minCoeff() >= config.eigenvalue_floor) return;
    const double target = rho.trace().real();
    RealVector lc = lam.cwiseMax(config.eigenvalue_floor);
    lc *= target / lc.sum();
    rho = u * lc.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
  };

  if (n >= 2) {
    const double nn = static_cast<double>(n);
    const int m = (n - 1) * (nb - 1);  // coefficient 0 (trace) is pinned
    for (int iter = 0; iter < config.max_iters; ++iter) {
      RealVector grad(m);
      for (int i = 1; i < n; ++i) {
        const RealVector ci = basis.coefficients(states[i]);
        for (int a = 1; a < nb; ++a) {
          RealVector cp = ci, cm = ci;
          cp[a] += config.fd_step;
          cm[a] -= config.fd_step;
          const Matrix rp = basis.reconstruct(cp);
          const Matrix rm = basis.reconstruct(cm);
          double fp = 0.0, fm = 0.0;
          try {
            fp = sbp_segment(s, states[i - 1], rp, nn, beta, sigma, ns) +
                 sbp_segment(s, rp, states[i + 1], nn, beta, sigma, ns);
            fm = sbp_segment(s, states[i - 1], rm, nn, beta, sigma, ns) +
                 sbp_segment(s, rm, states[i + 1], nn, beta, sigma, ns);
          } catch (const std::exception&) {
            fp = fm = 0.0;  // flat direction at the faithfulness boundary
          }
          grad[(i - 1) * (nb - 1) + (a - 1)] =
              (fp - fm) / (2.0 * config.fd_step);
        }
      }

      // Frozen-kernel block-tridiagonal preconditioner from the segment
      // quadratic forms <dc, pinv dc>.
      RealMatrix hess = RealMatrix::Zero(m, m);
      std::vector<RealMatrix> pk(n);
      for (int k = 0; k < n; ++k) {
        const Matrix mid = 0.5 * (states[k] + states[k + 1]);
        pk[k] = laplacian_build(mid, s, ns)
                    .pinv.block(1, 1, nb - 1, nb - 1) *
                (2.0 * nn);
      }
      const int bsz = nb - 1;
      for (int i = 1; i < n; ++i) {
        hess.block((i - 1) * bsz, (i - 1) * bsz, bsz, bsz) =
            pk[i - 1] + pk[i];
        if (i + 1 < n) {
          hess.block((i - 1) * bsz, i * bsz, bsz, bsz) = -pk[i];
          hess.block(i * bsz, (i - 1) * bsz, bsz, bsz) = -pk[i];
        }
      }
      const RealVector dir = hess.ldlt().solve(grad);

      double alpha = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        std::vector<Matrix> trial = states;
        for (int i = 1; i < n; ++i) {
          RealVector ci = basis.coefficients(states[i]);
          ci.segment(1, nb - 1) -= alpha * dir.segment((i - 1) * bsz, bsz);
          trial[i] = basis.reconstruct(ci);
          project_faithful(trial[i]);
        }
        double v2 = 0.0;
        bool ok = true;
        try {
          v2 = sbp_functional(s, trial, beta, sigma, ns);
        } catch (const std::exception&) {
          ok = false;
        }
        if (ok && v2 < value) {
          const double drop = value - v2;
          states = trial;
          value = v2;
          out.value_trace.push_back(value);
          accepted = true;
          if (drop < config.tol * std::max(1.0, std::abs(value))) iter = config.max_iters;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
    }
  }

  out.states = states;
  out.functional_value = value;
  return out;
}

EquivalenceReport sbp_equivalence_check(const TransportStructure& s,
                                        const std::vector<Matrix>& states,
                                        const Matrix& sigma, double beta,
                                        const NumericSettings& ns) {
  EquivalenceReport rep;
  const double n = static_cast<double>(states.size() - 1);
  const double dt = 1.0 / n;
  const double ts = trace_scale(structure_convention(s), sigma.rows());
  const int m = structure_term_count(s);
  const Matrix log_sigma = matrix_function(sigma, ScalarFn::Log);

  // Left-endpoint Riemann scheme: all segment quantities at rho_k.
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const Matrix& rho = states[k];
    const Matrix xdot = (states[k + 1] - states[k]) * n;
    const Matrix phi = score_solve(rho, xdot, s, ns);
    const Matrix x = matrix_function(rho, ScalarFn::Log) - log_sigma;
    double lhs_k = 0.0, mm_k = 0.0, fish_k = 0.0, cross_k = 0.0;
    for (int j = 0; j < m; ++j) {
      const Matrix gphi = structure_derivative(s, phi, j);
      const Matrix gx = structure_derivative(s, x, j);
      const Matrix lphi = structure_multiply(s, rho, gphi, j, false, ns);
      const Matrix lx = structure_multiply(s, rho, gx, j, false, ns);
      const Matrix gm = gphi + beta * gx;  // m = L grad(phi + beta x)
      const Matrix lm = lphi + beta * lx;
      lhs_k += ts * (gm.adjoint() * lm).trace().real();
      mm_k += ts * (gphi.adjoint() * lphi).trace().real();
      fish_k += ts * (gx.adjoint() * lx).trace().real();
      cross_k += 2.0 * beta * ts * (gphi.adjoint() * lx).trace().real();
    }
    rep.lhs += dt * lhs_k;
    rep.rhs += dt * (mm_k + beta * beta * fish_k);
    rep.cross_term += dt * cross_k;
  }
  const TraceConvention conv = structure_convention(s);
  rep.entropy_difference = relative_entropy(states.back(), sigma, conv, ns) -
                           relative_entropy(states.front(), sigma, conv, ns);
  rep.rhs += 2.0 * beta * rep.entropy_difference;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace qwass
