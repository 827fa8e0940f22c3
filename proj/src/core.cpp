#include "hausdorff/core.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace hausdorff {

double sphere_area(int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  const double pi = boost::math::constants::pi<double>();
  return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) { return sphere_area(n) / n; }

double power_integral(double s, double a, double b) {
  if (!(a >= 0.0) || !(b >= a)) throw InvalidArgument("power_integral: need 0 <= a <= b");
  if (a == b) return 0.0;
  if (s > 0.0) {
    if (std::isinf(b)) return kInf;
    if (a == 0.0) return std::pow(b, s) / s;
  } else if (s < 0.0) {
    if (a == 0.0) return kInf;
    if (std::isinf(b)) return -std::pow(a, s) / s;
  } else {
    if (a == 0.0 || std::isinf(b)) return kInf;
    return std::log(b / a);
  }
  const double L = std::log(b / a);
  return std::exp(s * std::log(a)) * std::expm1(s * L) / s;
}

double cap_fraction(int n, double r, double d, double R) {
  if (d == 0.0) return r < R ? 1.0 : 0.0;
  if (r == 0.0) return d < R ? 1.0 : 0.0;
  // 1 - cos(phi0) and 1 + cos(phi0) in factored form to avoid cancellation.
  const double om = (R - r + d) * (R + r - d) / (2.0 * r * d);
  const double op = (r + d - R) * (r + d + R) / (2.0 * r * d);
  if (op <= 0.0) return 1.0;
  if (om <= 0.0) return 0.0;
  if (n == 1) return 0.5;
  const double phi0 = 2.0 * std::atan2(std::sqrt(om), std::sqrt(op));
  if (n == 2) return phi0 / boost::math::constants::pi<double>();
  const double s2 = std::min(1.0, om * op);
  const double half = 0.5 * boost::math::ibeta(0.5 * (n - 1), 0.5, s2);
  return om <= 1.0 ? half : 1.0 - half;
}

bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace hausdorff
