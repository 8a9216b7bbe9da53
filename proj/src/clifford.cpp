#include "qwass/clifford.hpp"

#include <cmath>
#include <string>

namespace qwass {

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(int n) : n_(n) {
  if (n < 1 || n > 6)
    throw size_error("CliffordAlgebra: mode count " + std::to_string(n) +
                     " outside the supported range [1, 6]");
  dim_ = Eigen::Index(1) << n;

  // Jordan-Wigner strings.
  for (int j = 0; j < n; ++j) {
    Matrix q = Matrix::Identity(1, 1);
    for (int k = 0; k < j; ++k) q = kron(q, pauli_z());
    q = kron(q, pauli_x());
    for (int k = j + 1; k < n; ++k) q = kron(q, Matrix::Identity(2, 2));
    generators_.push_back(std::move(q));
  }

  // Q^alpha = Q_1^{a_1} ... Q_n^{a_n}, alpha lexicographic (a_1 most
  // significant).
  basis_.tscale = 1.0 / static_cast<double>(dim_);
  const int count = 1 << n;
  for (int mask = 0; mask < count; ++mask) {
    Matrix q = Matrix::Identity(dim_, dim_);
    int w = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << (n - 1 - j))) {
        q = q * generators_[j];
        ++w;
      }
    basis_.elements.push_back(std::move(q));
    weights_.push_back(w);
  }
}

RealVector CliffordAlgebra::expand(const Matrix& a, double tol) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw size_error("CliffordAlgebra::expand: operator dimension " +
                     std::to_string(a.rows()) + " != " + std::to_string(dim_));
  const double res = basis_.expansion_residual(a);
  if (res > tol)
    throw expansion_error(
        "CliffordAlgebra::expand: operator lies outside the algebra span "
        "(relative residual " +
        std::to_string(res) + ")");
  return basis_.coefficients(a);
}

Matrix CliffordAlgebra::grading(const Matrix& a) const {
  RealVector c = expand(a);
  for (int k = 0; k < basis_.size(); ++k)
    if (weights_[k] % 2 != 0) c[k] = -c[k];
  return basis_.reconstruct(c);
}

Matrix CliffordAlgebra::derivative(const Matrix& a, int j) const {
  return 0.5 * (generators_.at(j) * a - grading(a) * generators_.at(j));
}

Matrix CliffordAlgebra::derivative_adjoint(const Matrix& a, int j) const {
  return 0.5 * (generators_.at(j) * a + grading(a) * generators_.at(j));
}

std::vector<Matrix> CliffordAlgebra::gradient(const Matrix& a) const {
  std::vector<Matrix> g;
  g.reserve(n_);
  for (int j = 0; j < n_; ++j) g.push_back(derivative(a, j));
  return g;
}

Matrix CliffordAlgebra::divergence(const std::vector<Matrix>& a) const {
  if (static_cast<int>(a.size()) != n_)
    throw size_error("CliffordAlgebra::divergence: expected " +
                     std::to_string(n_) + " components, got " +
                     std::to_string(a.size()));
  Matrix d = Matrix::Zero(dim_, dim_);
  for (int j = 0; j < n_; ++j) d -= derivative_adjoint(a[j], j);
  return d;
}

Matrix CliffordAlgebra::number_operator(const Matrix& a) const {
  RealVector c = expand(a);
  for (int k = 0; k < basis_.size(); ++k) c[k] *= weights_[k];
  return basis_.reconstruct(c);
}

Matrix CliffordAlgebra::semigroup_apply(double t, const Matrix& a) const {
  RealVector c = expand(a);
  for (int k = 0; k < basis_.size(); ++k) c[k] *= std::exp(-t * weights_[k]);
  return basis_.reconstruct(c);
}

}  // namespace qwass
