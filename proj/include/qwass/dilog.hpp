#pragma once

namespace qwass {

/// Dilogarithm Li_2(x) for x in [-1, 1]: power series for |x| <= 1/2,
/// reflection identities otherwise.
double dilog(double x);

/// zeta(x) = (Li_2(x) - Li_2(-x)) / 2 = sum_{k odd} x^k / k^2 on (-1, 1);
/// strictly increasing with zeta'(x) = artanh(x)/x.
double zeta_fn(double x);

/// Inverse of zeta_fn by bracketed Newton, tolerance 1e-12.
double zeta_inverse(double y);

/// theta(t) = zeta^{-1}( t zeta(theta1) + (1-t) zeta(theta0) ).
double analytic_fermionic_geodesic(double theta0, double theta1, double t);

/// artanh(x)/x with the series limit at x -> 0.
double artanh_over_x(double x);

}  // namespace qwass
