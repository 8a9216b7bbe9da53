#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwass/lindblad.hpp"
#include "qwass/types.hpp"

namespace qwass {

/// Parametric family theta -> rho(theta) on a transport structure, with a
/// parameter-space metric G_theta (identity unless stated otherwise).
struct ParametricModel {
  int dim_params = 1;
  std::function<Matrix(const RealVector&)> rho;
  // optional analytic derivative; empty -> central differences
  std::function<std::vector<Matrix>(const RealVector&)> analytic_derivative;
  TransportStructure structure;
  RealMatrix g_theta;  // d x d SPD
  std::function<bool(const RealVector&)> in_domain;
  TraceConvention convention = TraceConvention::Normalized;
  // closed-form information matrix when the family has one (reference column)
  std::function<double(const RealVector&)> analytic_info_matrix;
  NumericSettings ns;

  bool valid_at(const RealVector& theta) const {
    return !in_domain || in_domain(theta);
  }
};

/// Registry of the built-in families: "fermionic-n1", "fermionic-n1-ac",
/// "depolarizing-n2". Throws std::out_of_range for unknown keys.
ParametricModel make_model(const std::string& key);
std::vector<std::string> model_keys();

/// D_theta rho(theta): analytic when provided, else central differences with
/// step h_i = fd_step_rel * max(1, |theta_i|); output projected traceless.
std::vector<Matrix> model_derivative(const ParametricModel& model,
                                     const RealVector& theta);

/// Solves -Delta_rho Phi = X for the score Phi orthogonal to id. X must be
/// traceless under the structure's convention.
Matrix score_solve(const Matrix& rho, const Matrix& x,
                   const TransportStructure& s, const NumericSettings& ns = {});
Matrix score_solve(const TransportLaplacian& lap, const Matrix& x,
                   const NumericSettings& ns = {});

/// (G_W)_ij = tau( (G^T dr)_i * (-Delta)^{-1} (dr G)_j ) at theta.
RealMatrix wasserstein_info_matrix(const ParametricModel& model,
                                   const RealVector& theta);

/// Discrete Riemann action N * sum_k <dtheta_k, G_W(theta_k) dtheta_k>.
double path_action(const ParametricModel& model,
                   const std::vector<RealVector>& path);

/// von Neumann entropy objective R(theta) = tau(rho log rho) with gradient by
/// central differences (analytic for the n=1 fermionic family).
struct Objective {
  std::function<double(const RealVector&)> value;
  std::function<RealVector(const RealVector&)> gradient;  // may be empty
};
Objective von_neumann_entropy_objective(const ParametricModel& model);

}  // namespace qwass
