#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qwass/basis.hpp"
#include "qwass/clifford.hpp"
#include "qwass/types.hpp"

namespace qwass {

struct JumpTerm {
  Matrix v;
  double omega = 0.0;
  int adjoint_index = 0;  // j-bar with V_{jbar} = V_j^*
};

/// Detailed-balance Lindblad data: invariant state sigma plus jump terms
/// closed under adjoints with sigma V_j sigma^{-1} = e^{-omega_j} V_j.
struct LindbladGenerator {
  DensityOperator sigma;
  std::vector<JumpTerm> terms;
};

struct ValidationReport {
  struct Item {
    std::string condition;
    int index;
    double residual;
    bool ok;
  };
  std::vector<Item> items;
  bool valid = true;
  std::string summary() const;
};

ValidationReport validate_generator(const LindbladGenerator& gen,
                                    const NumericSettings& ns = {});

enum class Picture { Heisenberg, Schroedinger };

/// Heisenberg: sum_j e^{-omega_j/2} (V_j^* [A, V_j] + [V_j^*, A] V_j).
/// Schroedinger: the trace-dual superoperator.
Matrix lindblad_apply(const LindbladGenerator& gen, const Matrix& a,
                      Picture picture = Picture::Heisenberg);

/// Weighted Feynman-Kubo-Mori operator rho_hat_j # C: entrywise multiplier
/// logmean(e^{omega/2} lambda_i, e^{-omega/2} lambda_k) in rho's eigenbasis.
/// inverse applies the reciprocal multiplier. omega = 0 reduces to
/// kubo_mori_apply(rho, rho, C).
Matrix weighted_fkm_apply(const Matrix& rho, double omega, const Matrix& c,
                          bool inverse = false, const NumericSettings& ns = {});

/// Differential structures generating a transport Laplacian.
struct FermionicStructure {
  std::shared_ptr<const CliffordAlgebra> algebra;
  enum class Kind { KuboMori, Anticommutator } kind = Kind::KuboMori;
};
struct LindbladStructure {
  std::shared_ptr<const LindbladGenerator> generator;
};
using TransportStructure = std::variant<FermionicStructure, LindbladStructure>;

int structure_term_count(const TransportStructure& s);
TraceConvention structure_convention(const TransportStructure& s);
/// The basis the Laplacian acts on (Q^alpha span or Hermitian space).
OperatorBasis structure_basis(const TransportStructure& s);
Matrix structure_derivative(const TransportStructure& s, const Matrix& a,
                            int j);
Matrix structure_derivative_adjoint(const TransportStructure& s,
                                    const Matrix& a, int j);
/// The multiplication operator L_rho^{(j)} (or its inverse) of the structure.
Matrix structure_multiply(const TransportStructure& s, const Matrix& rho,
                          const Matrix& c, int j, bool inverse = false,
                          const NumericSettings& ns = {});

/// -Delta_rho(A) = sum_j nabla_j^*( L_rho^{(j)}(nabla_j A) ).
Matrix laplacian_apply(const TransportStructure& s, const Matrix& rho,
                       const Matrix& a, const NumericSettings& ns = {});

/// The assembled positive-semidefinite superoperator with its pseudo-inverse
/// on the complement of span{id}.
struct TransportLaplacian {
  TransportStructure structure;
  OperatorBasis basis;
  RealMatrix matrix;  // -Delta_rho in `basis`
  RealMatrix pinv;    // inverse on span{id}^perp

  Matrix apply(const Matrix& a) const { return basis.reconstruct(matrix * basis.coefficients(a)); }
  Matrix solve(const Matrix& x) const { return basis.reconstruct(pinv * basis.coefficients(x)); }
};

TransportLaplacian laplacian_build(const Matrix& rho,
                                   const TransportStructure& s,
                                   const NumericSettings& ns = {});

/// S_sigma(rho) = tau(rho (log rho - log sigma)) under the given convention.
double relative_entropy(const Matrix& rho, const Matrix& sigma,
                        TraceConvention conv,
                        const NumericSettings& ns = {});

/// I(rho) = sum_j <nabla_j X, L_rho^{(j)} nabla_j X>, X = log rho - log sigma.
double fisher_information(const Matrix& rho, const Matrix& sigma,
                          const TransportStructure& s,
                          const NumericSettings& ns = {});

}  // namespace qwass
