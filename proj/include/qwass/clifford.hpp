#pragma once

#include <vector>

#include "qwass/basis.hpp"
#include "qwass/types.hpp"

namespace qwass {

/// Clifford algebra on R^n realized by Jordan-Wigner Pauli strings:
/// Q_j = sigma_z^{(j-1)} (x) sigma_x (x) id^{(n-j)}, {Q_i, Q_j} = 2 delta_ij.
/// The Q^alpha = prod_i Q_i^{alpha_i}, alpha in {0,1}^n in lexicographic
/// order, are orthonormal under tau(A* B) with tau = 2^{-n} tr.
class CliffordAlgebra {
 public:
  explicit CliffordAlgebra(int n);

  int modes() const { return n_; }
  Eigen::Index dim() const { return dim_; }
  const Matrix& generator(int j) const { return generators_.at(j); }  // 0-based
  const OperatorBasis& basis() const { return basis_; }
  int weight(int index) const { return weights_.at(index); }  // |alpha|

  /// Coefficients of A in the Q^alpha basis; throws expansion_error when A
  /// lies outside the algebra span.
  RealVector expand(const Matrix& a, double tol = 1e-10) const;

  /// Grading Gamma: flips the sign of odd-degree basis coefficients.
  Matrix grading(const Matrix& a) const;

  /// nabla_j(A) = (Q_j A - Gamma(A) Q_j) / 2, 0-based j.
  Matrix derivative(const Matrix& a, int j) const;
  /// nabla_j^*(A) = (Q_j A + Gamma(A) Q_j) / 2.
  Matrix derivative_adjoint(const Matrix& a, int j) const;

  std::vector<Matrix> gradient(const Matrix& a) const;
  /// div(A) = -sum_j nabla_j^*(A_j).
  Matrix divergence(const std::vector<Matrix>& a) const;

  /// Number operator N A = -div(grad A); N Q^alpha = |alpha| Q^alpha.
  Matrix number_operator(const Matrix& a) const;
  /// Semigroup P_t = e^{-tN} applied by scaling basis coefficients.
  Matrix semigroup_apply(double t, const Matrix& a) const;

  double tau(const Matrix& a) const {
    return a.trace().real() / static_cast<double>(dim_);
  }

 private:
  int n_;
  Eigen::Index dim_;
  std::vector<Matrix> generators_;
  OperatorBasis basis_;
  std::vector<int> weights_;
};

}  // namespace qwass
