#pragma once

#include <cstdint>
#include <vector>

#include "qwass/model.hpp"

namespace qwass {

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<RealVector> thetas;
  std::vector<double> diagnostics;  // per-step objective / action / H
  bool warning = false;
  bool domain_exit = false;
};

/// Forward-Euler natural gradient descent
///   theta_{k+1} = theta_k - tau G_W(theta_k)^{-1} G_theta D_theta R(theta_k),
/// with step halving (up to 30 times) when an update exits the domain.
FlowTrajectory natural_gradient_flow(const ParametricModel& model,
                                     const RealVector& theta0,
                                     const Objective& objective, double tau,
                                     int n_steps);

enum class OptimizerMode { Gradient, MonteCarlo };
enum class ActionScheme { Midpoint, LeftPoint };

struct BvpConfig {
  int max_iters = 4000;
  double tol = 1e-13;
  OptimizerMode mode = OptimizerMode::Gradient;
  ActionScheme scheme = ActionScheme::Midpoint;
  std::uint64_t seed = 0;        // mandatory for MonteCarlo
  double mc_step = 0.05;         // initial proposal scale
  double mc_decay = 0.95;        // per-epoch geometric decay
  int mc_epochs = 200;
  int mc_sweeps_per_epoch = 20;
};

struct BvpResult {
  FlowTrajectory trajectory;
  std::vector<double> action_trace;  // monotone non-increasing
  double action = 0.0;
  bool converged = true;
};

/// Minimizes the discretized geodesic action over the interior points with
/// the endpoints pinned.
BvpResult geodesic_bvp(const ParametricModel& model, const RealVector& theta0,
                       const RealVector& theta1, int n_segments,
                       const BvpConfig& config = {});

/// RK4 integration of the Hamiltonian system
///   theta' = G_W^{-1} P,  P' = -1/2 d_theta <P, G_W^{-1} P>,
/// diagnostics = H(t) = <P, G_W^{-1} P> / 2.
FlowTrajectory geodesic_ivp(const ParametricModel& model,
                            const RealVector& theta0, const RealVector& p0,
                            double t_end, double dt);

struct BridgePath {
  std::vector<Matrix> states;  // N+1 faithful operators, endpoints pinned
  double beta = 0.0;
  double functional_value = 0.0;
  std::vector<double> value_trace;
  bool warning = false;
};

struct SbpConfig {
  int max_iters = 2000;
  double tol = 1e-12;
  double fd_step = 1e-7;
  double eigenvalue_floor = 1e-8;
};

/// Schroedinger-bridge functional on a discretized state path:
///   sum_k dt ( ||M_k||^2_{rho_k^{-1}} + beta^2 I(rho_k) )
/// with M_k recovered from the continuity equation at the midpoint state.
double sbp_functional(const TransportStructure& s,
                      const std::vector<Matrix>& states, double beta,
                      const Matrix& sigma, const NumericSettings& ns = {});

BridgePath sbp_solve(const TransportStructure& s, const DensityOperator& rho_in,
                     const DensityOperator& rho_fi, double beta, int n_segments,
                     const SbpConfig& config = {},
                     const NumericSettings& ns = {});

struct EquivalenceReport {
  double lhs = 0.0;         // int ||m||^2_{rho^{-1}}
  double rhs = 0.0;         // int (||M||^2 + beta^2 I) + 2 beta (S_fi - S_in)
  double residual = 0.0;    // |lhs - rhs|
  double cross_term = 0.0;  // int 2 beta <M, grad(log rho - log sigma)>
  double entropy_difference = 0.0;
};

/// Evaluates both sides of the bridge/transport identity on a discretized
/// path (left-endpoint Riemann scheme; the residual vanishes at first order).
EquivalenceReport sbp_equivalence_check(const TransportStructure& s,
                                        const std::vector<Matrix>& states,
                                        const Matrix& sigma, double beta,
                                        const NumericSettings& ns = {});

}  // namespace qwass
