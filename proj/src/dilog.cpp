#include "qwass/dilog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qwass {

namespace {
constexpr double kPi2_6 = 1.6449340668482264365;   // pi^2/6
constexpr double kPi2_8 = 1.2337005501361698274;   // pi^2/8
constexpr double kPi2_12 = 0.82246703342411321824;  // pi^2/12

double dilog_series(double x) {
  // Li_2(x) = sum x^k / k^2, |x| <= 1/2 converges fast.
  double term = x, sum = x;
  for (int k = 2; k < 200; ++k) {
    term *= x;
    const double add = term / (k * static_cast<double>(k));
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}
}  // namespace

double dilog(double x) {
  if (x < -1.0 || x > 1.0)
    throw std::domain_error("dilog: argument " + std::to_string(x) +
                            " outside [-1, 1]");
  if (x == 1.0) return kPi2_6;
  if (x == -1.0) return -kPi2_12;
  if (std::abs(x) <= 0.5) return dilog_series(x);
  if (x > 0.5)  // Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x)
    return kPi2_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
  // x < -0.5: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, with x/(x-1) in (0, 1/2].
  const double y = x / (x - 1.0);
  const double l = std::log1p(-x);
  return -dilog_series(y) - 0.5 * l * l;
}

double zeta_fn(double x) {
  if (x <= -1.0 || x >= 1.0)
    throw std::domain_error("zeta_fn: argument " + std::to_string(x) +
                            " outside (-1, 1)");
  if (std::abs(x) <= 0.6) {
    // chi_2(x) = sum_{k odd} x^k / k^2.
    double sum = 0.0, p = x;
    const double x2 = x * x;
    for (int k = 1; k < 400; k += 2) {
      const double add = p / (k * static_cast<double>(k));
      sum += add;
      if (std::abs(add) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
      p *= x2;
    }
    return sum;
  }
  // Landen-type identity: chi2(x) + chi2((1-x)/(1+x)) =
  //   pi^2/8 - (1/2) ln x ln((1-x)/(1+x)), valid for x in (0, 1).
  const double ax = std::abs(x);
  const double u = (1.0 - ax) / (1.0 + ax);
  const double val = kPi2_8 - 0.5 * std::log(ax) * std::log(u) - zeta_fn(u);
  return x > 0 ? val : -val;
}

double artanh_over_x(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 + x2 * x2 / 5.0 + x2 * x2 * x2 / 7.0;
  }
  return std::atanh(x) / x;
}

double zeta_inverse(double y) {
  if (std::abs(y) >= kPi2_8)
    throw std::domain_error("zeta_inverse: target " + std::to_string(y) +
                            " outside (-pi^2/8, pi^2/8)");
  if (y == 0.0) return 0.0;
  double lo = y > 0 ? 0.0 : -1.0, hi = y > 0 ? 1.0 : 0.0;
  double x = std::clamp(y, -0.95, 0.95);  // zeta(x) ~ x near 0
  for (int it = 0; it < 200; ++it) {
    const double f = zeta_fn(x) - y;
    if (f > 0)
      hi = x;
    else
      lo = x;
    const double dx = f / artanh_over_x(x);  // zeta'(x) = artanh(x)/x
    double xn = x - dx;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < 1e-15 * std::max(1.0, std::abs(x)) ||
        std::abs(f) < 1e-12 * std::max(1.0, std::abs(y))) {
      x = xn;
      if (std::abs(zeta_fn(x) - y) < 1e-12) return x;
    }
    x = xn;
  }
  return x;
}

double analytic_fermionic_geodesic(double theta0, double theta1, double t) {
  return zeta_inverse((1.0 - t) * zeta_fn(theta0) + t * zeta_fn(theta1));
}

}  // namespace qwass
