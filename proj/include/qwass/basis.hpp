#pragma once

#include <functional>
#include <vector>

#include "qwass/types.hpp"

namespace qwass {

/// An orthonormal family of matrices spanning a real subspace of operators,
/// with inner product <A,B> = tscale * Re tr(A* B). Element 0 is proportional
/// to the identity. For Clifford algebras this is the Q^alpha family; for the
/// full Hermitian space it is a generalized Gell-Mann basis.
struct OperatorBasis {
  std::vector<Matrix> elements;
  double tscale = 1.0;

  Eigen::Index matrix_dim() const { return elements.at(0).rows(); }
  int size() const { return static_cast<int>(elements.size()); }

  double inner(const Matrix& a, const Matrix& b) const {
    return tscale * (a.adjoint() * b).trace().real();
  }
  RealVector coefficients(const Matrix& a) const;
  Matrix reconstruct(const RealVector& c) const;
  /// Norm of the part of `a` outside the span, relative to ||a||.
  double expansion_residual(const Matrix& a) const;
  /// Max deviation of the Gram matrix from the identity.
  double gram_defect() const;

  /// Orthonormal basis of the Hermitian d x d matrices; element 0 is
  /// id/sqrt(<id,id>).
  static OperatorBasis hermitian(Eigen::Index d, TraceConvention conv);
};

/// A linear map on the span of a basis, stored as its real matrix in that
/// basis: M_ab = <e_a, f(e_b)>.
struct Superoperator {
  OperatorBasis basis;
  RealMatrix matrix;

  static Superoperator build(
      const std::function<Matrix(const Matrix&)>& map, OperatorBasis basis);
  Matrix apply(const Matrix& a) const;
};

/// Pseudo-inverse of `m` restricted to the orthogonal complement of the
/// declared kernel vectors. Throws ergodicity_error if the numerically
/// detected kernel dimension (singular values < rel_tol * sigma_max)
/// disagrees with the declared one.
RealMatrix pinv_with_kernel(const RealMatrix& m,
                            const std::vector<RealVector>& kernel,
                            double rel_tol = 1e-9);

}  // namespace qwass
