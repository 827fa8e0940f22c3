#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/kernel.hpp"
#include "hausdorff/matrix_family.hpp"
#include "hausdorff/test_function.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hausdorff {

struct OperatorSpec {
  int m = 1;
  int n = 1;
  KernelSpec kernel;
  std::vector<MatrixFamily> families;

  void validate() const;
  Var var() const;  // what the y-integrand depends on
};

// The y-integral collapsed to one variable t (|y| or y1): the integral of
// G(y) over the support equals the integral over [t_lo, t_hi] of
// measure(t) * G(embed(t)) whenever G depends on y through t only.
struct Slice {
  Var var = Var::Radius;
  int n = 1;
  double t_lo = 0.0;
  double t_hi = kInf;
  double measure_coef = 1.0;
  double measure_exp = 0.0;
  double fill = 0.0;  // other coordinates for y1 slices

  Point embed(double t) const;
  double measure(double t) const { return measure_coef * std::pow(t, measure_exp); }
};

std::optional<Slice> slice_for(const OperatorSpec& spec, Var integrand_var);

// e as coef * t^exponent along the slice, if e depends on y through t only.
std::optional<Monomial> slice_monomial(const PowerExpr& e, const Slice& slice);

// Integral over the kernel support of g(y); g already includes the density.
Estimate integrate_support(const OperatorSpec& spec, Var integrand_var,
                           const std::function<double(const Point&)>& g,
                           const std::vector<double>& breaks, const QuadratureSpec& quad);

// max over samples and i of ||A_i(y)|| ||A_i(y)^{-1}||; empty when infinite.
std::optional<double> rho_bound(const OperatorSpec& spec, const std::vector<Point>& sample);

// Closed form of H(f_1, ..., f_m) as a radial function, when the kernel and
// families are in the grammar and every f_i is symbolic. Throws DivergentError.
std::optional<TestFunction> symbolic_image(const OperatorSpec& spec,
                                           const std::vector<TestFunction>& fs);

Estimate apply_operator_estimate(const OperatorSpec& spec, const std::vector<TestFunction>& fs,
                                 const Point& x, const QuadratureSpec& quad);
double apply_operator(const OperatorSpec& spec, const std::vector<TestFunction>& fs, const Point& x,
                      const QuadratureSpec& quad);

// (1/x) * integral of f over (0, x).
double apply_hardy_1d(const TestFunction& f, double x, const QuadratureSpec& quad);

}  // namespace hausdorff
