#include "qwass/basis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace qwass {

RealVector OperatorBasis::coefficients(const Matrix& a) const {
  RealVector c(size());
  for (int k = 0; k < size(); ++k) c[k] = inner(elements[k], a);
  return c;
}

Matrix OperatorBasis::reconstruct(const RealVector& c) const {
  if (c.size() != size())
    throw size_error("OperatorBasis::reconstruct: coefficient vector of size " +
                     std::to_string(c.size()) + " for basis of size " +
                     std::to_string(size()));
  Matrix a = Matrix::Zero(matrix_dim(), matrix_dim());
  for (int k = 0; k < size(); ++k) a += c[k] * elements[k];
  return a;
}

double OperatorBasis::expansion_residual(const Matrix& a) const {
  // Relative to max(||a||, 1): near-zero inputs are judged by absolute
  // residual so roundoff on tiny operators is not misread as span escape.
  const Matrix r = a - reconstruct(coefficients(a));
  const double na = std::sqrt(std::max(inner(a, a), 1.0));
  return std::sqrt(std::max(inner(r, r), 0.0)) / na;
}

double OperatorBasis::gram_defect() const {
  double worst = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      const double g = inner(elements[i], elements[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

OperatorBasis OperatorBasis::hermitian(Eigen::Index d, TraceConvention conv) {
  OperatorBasis b;
  b.tscale = trace_scale(conv, d);
  const double norm_id = std::sqrt(b.tscale * static_cast<double>(d));
  b.elements.push_back(Matrix::Identity(d, d) / norm_id);
  const double s = 1.0 / std::sqrt(b.tscale);
  // Generalized Gell-Mann family: symmetric, antisymmetric, then diagonal.
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = e(j, i) = s / std::sqrt(2.0);
      b.elements.push_back(e);
      Matrix f = Matrix::Zero(d, d);
      f(i, j) = Complex(0.0, -s / std::sqrt(2.0));
      f(j, i) = Complex(0.0, s / std::sqrt(2.0));
      b.elements.push_back(f);
    }
  for (Eigen::Index k = 1; k < d; ++k) {
    Matrix e = Matrix::Zero(d, d);
    const double c = s / std::sqrt(static_cast<double>(k * (k + 1)));
    for (Eigen::Index i = 0; i < k; ++i) e(i, i) = c;
    e(k, k) = -c * static_cast<double>(k);
    b.elements.push_back(e);
  }
  return b;
}

Superoperator Superoperator::build(
    const std::function<Matrix(const Matrix&)>& map, OperatorBasis basis) {
  Superoperator s;
  const int n = basis.size();
  s.matrix = RealMatrix(n, n);
  for (int b = 0; b < n; ++b) {
    const Matrix fb = map(basis.elements[b]);
    for (int a = 0; a < n; ++a) s.matrix(a, b) = basis.inner(basis.elements[a], fb);
  }
  s.basis = std::move(basis);
  return s;
}

Matrix Superoperator::apply(const Matrix& a) const {
  return basis.reconstruct(matrix * basis.coefficients(a));
}

RealMatrix pinv_with_kernel(const RealMatrix& m,
                            const std::vector<RealVector>& kernel,
                            double rel_tol) {
  Eigen::JacobiSVD<RealMatrix> svd(m,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cut = rel_tol * sv.maxCoeff();
  int null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] < cut) ++null_dim;
  if (null_dim != static_cast<int>(kernel.size()))
    throw ergodicity_error(
        "pinv_with_kernel: numerical kernel dimension " +
        std::to_string(null_dim) + " != declared " +
        std::to_string(kernel.size()) +
        " (operator is not ergodic on the declared complement)");
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= cut) inv[i] = 1.0 / sv[i];
  RealMatrix p = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  // Project out the declared kernel directions exactly.
  for (const RealVector& k : kernel) {
    const RealVector u = k / k.norm();
    p -= (p * u) * u.transpose();
    p -= u * (u.transpose() * p);
  }
  return p;
}

}  // namespace qwass
