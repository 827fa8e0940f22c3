#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hausdorff {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kBalanceTol = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An integral, norm or mass that is infinite by exponent arithmetic.
class DivergentError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class DivergentNumerator : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_refinement = 20;
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Surface area of the unit sphere in R^n; equals 2 for n = 1.
double sphere_area(int n);

double unit_ball_volume(int n);

// Integral of t^(s-1) over [a, b], 0 <= a <= b <= inf; +inf when divergent.
double power_integral(double s, double a, double b);

// Normalized surface measure of {theta : |r theta - c| < R} for |c| = d.
double cap_fraction(int n, double r, double d, double R);

// 2^k for k ranges used by the dyadic machinery.
inline double dyadic(int k) { return std::ldexp(1.0, k); }

bool nearly_equal(double a, double b, double tol = kBalanceTol);

}  // namespace hausdorff
