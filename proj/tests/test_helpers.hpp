#pragma once

#include <random>

#include "qwass/operator_core.hpp"

namespace qwass::testing {

inline Matrix random_complex(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  const Matrix a = random_complex(d, rng);
  return 0.5 * (a + a.adjoint().eval());
}

/// Faithful state with unit standard trace.
inline Matrix random_faithful(Eigen::Index d, std::mt19937_64& rng,
                              double floor = 0.05) {
  const Matrix a = random_complex(d, rng);
  Matrix rho = a * a.adjoint() + floor * Matrix::Identity(d, d);
  rho /= rho.trace().real();
  return rho;
}

/// 64-node Gauss-Legendre quadrature of int_0^1 rho1^{1-s} T rho2^s ds.
inline Matrix kubo_mori_quadrature(const Matrix& rho1, const Matrix& rho2,
                                   const Matrix& t, int nodes = 64) {
  auto [x, w] = gauss_legendre_01(nodes);
  Matrix out = Matrix::Zero(t.rows(), t.cols());
  for (int i = 0; i < nodes; ++i) {
    const Matrix a = matrix_function(rho1, ScalarFn::Pow, 1.0 - x[i]);
    const Matrix b = matrix_function(rho2, ScalarFn::Pow, x[i]);
    out += w[i] * a * t * b;
  }
  return out;
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace qwass::testing
