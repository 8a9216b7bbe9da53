#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qwass/types.hpp"

namespace qwass {

struct EighResult {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns
};

/// Spectral decomposition of a Hermitian operator, H = U diag(lambda) U*.
EighResult eigh(const Matrix& h, double hermitian_tol = 1e-12);

enum class ScalarFn { Log, Exp, Pow, Scale };

/// Applies f to the eigenvalues in the eigenbasis of h. Pow/Scale take the
/// exponent/factor in `param`. Log and non-integer Pow require positive
/// spectrum and name the offending eigenvalue otherwise.
Matrix matrix_function(const Matrix& h, ScalarFn fn, double param = 0.0);

/// Logarithmic mean (a-b)/(log a - log b), continuous value a at a == b.
double log_mean(double a, double b);

/// Feynman-Kubo-Mori multiplication operator
///   forward:  int_0^1 rho1^{1-s} T rho2^s ds
///   inverse:  int_0^infty (rho1+t)^{-1} T (rho2+t)^{-1} dt
/// computed with entrywise spectral multipliers in the two eigenbases.
Matrix kubo_mori_apply(const Matrix& rho1, const Matrix& rho2, const Matrix& t,
                       bool inverse = false,
                       const NumericSettings& ns = NumericSettings{});

/// Anti-commutator multiplication: forward T -> (T rho + rho T)/2; inverse
/// solves {X, rho}/2 = T via multipliers 2/(lambda_i + lambda_j).
Matrix anticommutator_apply(const Matrix& rho, const Matrix& t,
                            bool inverse = false,
                            const NumericSettings& ns = NumericSettings{});

/// Solves S Sigma + Sigma S = Q for symmetric S, Sigma > 0.
RealMatrix lyapunov_solve(const RealMatrix& sigma, const RealMatrix& q);

/// Gauss-Legendre nodes/weights on [0, 1]. Retained for quadrature oracles.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n);

}  // namespace qwass
