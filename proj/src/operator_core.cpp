#include "qwass/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace qwass {

DensityOperator::DensityOperator(Matrix m, TraceConvention conv,
                                 const NumericSettings& ns)
    : mat(std::move(m)), convention(conv) {
  require_hermitian(mat, "DensityOperator", ns.hermitian_tol);
  mat = 0.5 * (mat + mat.adjoint().eval());
  const double tr = mat.trace().real() * trace_scale(convention, mat.rows());
  if (std::abs(tr - 1.0) > ns.trace_tol * std::max(1.0, std::abs(tr)))
    throw invariant_error("DensityOperator: trace " + std::to_string(tr) +
                          " != 1 under the declared convention");
  if (min_eigenvalue() < -ns.trace_tol)
    throw invariant_error("DensityOperator: negative eigenvalue " +
                          std::to_string(min_eigenvalue()));
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityOperator::require_faithful(double eps, const char* what) const {
  const double lo = min_eigenvalue();
  if (lo < eps)
    throw faithfulness_error(std::string(what) +
                             ": state not faithful (min eigenvalue " +
                             std::to_string(lo) + ")");
}

EighResult eigh(const Matrix& h, double hermitian_tol) {
  require_hermitian(h, "eigh", hermitian_tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix matrix_function(const Matrix& h, ScalarFn fn, double param) {
  auto [lam, u] = eigh(h);
  RealVector f(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double x = lam[i];
    switch (fn) {
      case ScalarFn::Log:
        if (x <= 0.0)
          throw std::domain_error("matrix_function(log): eigenvalue " +
                                  std::to_string(x) + " not positive");
        f[i] = std::log(x);
        break;
      case ScalarFn::Exp:
        f[i] = std::exp(x);
        break;
      case ScalarFn::Pow: {
        const bool integer_exp = param == std::floor(param);
        if (!integer_exp && x <= 0.0)
          throw std::domain_error("matrix_function(pow): eigenvalue " +
                                  std::to_string(x) +
                                  " not positive for fractional exponent");
        f[i] = std::pow(x, param);
        break;
      }
      case ScalarFn::Scale:
        f[i] = param * x;
        break;
    }
  }
  return u * f.asDiagonal() * u.adjoint();
}

double log_mean(double a, double b) {
  if (std::abs(a - b) < 1e-12 * std::max({a, b, 1e-300})) return a;
  return (a - b) / (std::log(a) - std::log(b));
}

namespace {

// Entrywise spectral calculus in the two eigenbases of (rho1, rho2).
Matrix two_sided_multiplier(const Matrix& rho1, const Matrix& rho2,
                            const Matrix& t, bool inverse,
                            const NumericSettings& ns) {
  auto [l1, u1] = eigh(rho1, ns.hermitian_tol);
  auto [l2, u2] = eigh(rho2, ns.hermitian_tol);
  Matrix tt = u1.adjoint() * t * u2;
  for (Eigen::Index i = 0; i < l1.size(); ++i)
    for (Eigen::Index k = 0; k < l2.size(); ++k) {
      const double m = log_mean(l1[i], l2[k]);
      tt(i, k) *= inverse ? 1.0 / m : m;
    }
  return u1 * tt * u2.adjoint();
}

}  // namespace

Matrix kubo_mori_apply(const Matrix& rho1, const Matrix& rho2, const Matrix& t,
                       bool inverse, const NumericSettings& ns) {
  if (inverse) {
    Eigen::SelfAdjointEigenSolver<Matrix> e1(rho1, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> e2(rho2, Eigen::EigenvaluesOnly);
    if (e1.eigenvalues().minCoeff() < ns.eps_faithful ||
        e2.eigenvalues().minCoeff() < ns.eps_faithful)
      throw faithfulness_error(
          "kubo_mori_apply: inverse requires faithful states");
  }
  return two_sided_multiplier(rho1, rho2, t, inverse, ns);
}

Matrix anticommutator_apply(const Matrix& rho, const Matrix& t, bool inverse,
                            const NumericSettings& ns) {
  if (!inverse) return 0.5 * (t * rho + rho * t);
  auto [lam, u] = eigh(rho, ns.hermitian_tol);
  if (lam.minCoeff() < ns.eps_faithful)
    throw faithfulness_error(
        "anticommutator_apply: inverse requires a faithful state");
  Matrix tt = u.adjoint() * t * u;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    for (Eigen::Index j = 0; j < lam.size(); ++j)
      tt(i, j) *= 2.0 / (lam[i] + lam[j]);
  return u * tt * u.adjoint();
}

RealMatrix lyapunov_solve(const RealMatrix& sigma, const RealMatrix& q) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sigma);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("lyapunov_solve: Sigma has eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  const RealMatrix& v = es.eigenvectors();
  RealMatrix qt = v.transpose() * q * v;
  for (Eigen::Index i = 0; i < qt.rows(); ++i)
    for (Eigen::Index j = 0; j < qt.cols(); ++j)
      qt(i, j) /= es.eigenvalues()[i] + es.eigenvalues()[j];
  RealMatrix s = v * qt * v.transpose();
  return 0.5 * (s + s.transpose().eval());
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        double q0 = 1.0, q1 = t;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2 * k - 1) * t * q1 - (k - 1) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        const double d = n * (t * q1 - q0) / (t * t - 1.0);
        x[i] = 0.5 * (1.0 - t);  // descending roots -> ascending nodes
        w[i] = 1.0 / ((1.0 - t * t) * d * d);
        break;
      }
    }
  }
  return {x, w};
}

}  // namespace qwass
