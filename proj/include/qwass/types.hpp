#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qwass {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerances and knobs shared across the library. A single instance is
/// threaded down from the CLI; defaults match the documented contracts.
struct NumericSettings {
  double hermitian_tol = 1e-12;
  double trace_tol = 1e-12;
  double eps_faithful = 1e-10;
  double basis_tol = 1e-10;
  double expansion_tol = 1e-10;
  double kernel_rel_tol = 1e-9;
  int quadrature_nodes = 64;
  double fd_step_rel = 1e-6;
};

struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct faithfulness_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ergodicity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct expansion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalized: tau(A) = 2^{-n} tr(A) on a 2^n-dimensional algebra.
/// Standard: plain matrix trace.
enum class TraceConvention { Normalized, Standard };

inline double trace_scale(TraceConvention c, Eigen::Index dim) {
  return c == TraceConvention::Normalized ? 1.0 / static_cast<double>(dim)
                                          : 1.0;
}

inline double hermiticity_defect(const Matrix& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  return hermiticity_defect(a) <= tol;
}

inline void require_hermitian(const Matrix& a, const char* what,
                              double tol = 1e-12) {
  if (!is_hermitian(a, tol))
    throw invariant_error(std::string(what) + ": operator is not Hermitian");
}

/// A self-adjoint element of the algebra; the constructor enforces the
/// invariant so downstream code can assume it.
struct HermitianOperator {
  Matrix mat;

  HermitianOperator() = default;
  explicit HermitianOperator(Matrix m, double tol = 1e-12) : mat(std::move(m)) {
    require_hermitian(mat, "HermitianOperator", tol);
    mat = 0.5 * (mat + mat.adjoint().eval());
  }
  Eigen::Index dim() const { return mat.rows(); }
};

/// A state: positive semidefinite with unit trace under its convention.
struct DensityOperator {
  Matrix mat;
  TraceConvention convention = TraceConvention::Standard;

  DensityOperator() = default;
  DensityOperator(Matrix m, TraceConvention conv,
                  const NumericSettings& ns = NumericSettings{});

  Eigen::Index dim() const { return mat.rows(); }
  double min_eigenvalue() const;
  bool is_faithful(double eps = 1e-10) const {
    return min_eigenvalue() >= eps;
  }
  void require_faithful(double eps, const char* what) const;
};

}  // namespace qwass
