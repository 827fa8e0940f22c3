#pragma once

#include "hausdorff/constants.hpp"
#include "hausdorff/operators.hpp"

namespace hausdorff::fixtures {

// psi = 1 on [0,1], s(t) = t: the one-dimensional Hardy averaging operator.
inline OperatorSpec hardy_operator(Convention conv = Convention::HardyCesaroPsi) {
  return OperatorSpec{1, 1, KernelSpec::closed(PowerExpr::parse("1"), Support::cube(0, 1), conv),
                      {MatrixFamily::diagonal(PowerExpr::parse("y1"))}};
}

inline TheoremParams hardy_params(TheoremId id, double lambda, double alpha, double q = 2.0, double p = 2.0,
                                  Convention conv = Convention::HardyCesaroPsi) {
  TheoremParams params;
  params.theorem = id;
  params.m = 1;
  params.n = 1;
  IndexExponents e;
  e.lambda = lambda;
  e.alpha = alpha;
  e.q = q;
  e.p = p;
  params.index = {e};
  params.target.lambda = lambda;
  params.target.alpha = alpha;
  params.target.q = q;
  params.target.p = p;
  params.op = hardy_operator(conv);
  return params;
}

// Phi(y) = c |y| on lo <= |y| <= hi, A(y) = y, xi = eta = 1, q = 4,
// q* = 1, lambda = -1/8, delta1 = delta2 = 2.
inline TheoremParams muckenhoupt_c4_params(double lo, double hi, double c = 1.0) {
  TheoremParams params;
  params.theorem = TheoremId::T3_4;
  params.m = 1;
  params.n = 1;
  IndexExponents e;
  e.lambda = -1.0 / 8.0;
  e.q = 4.0;
  params.index = {e};
  params.target.q = 4.0;
  params.target.lambda = -1.0 / 8.0;
  params.target.q_star = 1.0;
  params.target.lambda_star = -1.0 / 8.0;
  MuckenhouptParams mk;
  mk.xi = 1.0;
  mk.eta = 1.0;
  mk.delta1 = 2.0;
  mk.delta2 = 2.0;
  params.muckenhoupt = mk;
  params.op = OperatorSpec{1, 1,
                           KernelSpec::closed(PowerExpr{c, 1.0, 0.0}, Support::annulus(lo, hi),
                                              Convention::HausdorffPhi),
                           {MatrixFamily::diagonal(PowerExpr::parse("y1"))}};
  return params;
}

inline Point point1(double x) {
  Point p(1);
  p(0) = x;
  return p;
}

inline Point point2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

}  // namespace hausdorff::fixtures
