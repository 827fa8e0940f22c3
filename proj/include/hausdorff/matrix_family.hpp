#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/kernel.hpp"

#include <optional>
#include <vector>

namespace hausdorff {

template <typename Derived>
typename Derived::RealScalar frobenius_norm(const Eigen::MatrixBase<Derived>& A) {
  return A.norm();
}

// ||A|| * ||A^{-1}|| in the Frobenius norm; throws SingularMatrix.
template <typename Derived>
typename Derived::RealScalar condition_product(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  Eigen::FullPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(A);
  if (!lu.isInvertible()) throw SingularMatrix("matrix is singular");
  return frobenius_norm(A) * frobenius_norm(lu.inverse());
}

// y -> A(y): s(y) I, a scaled orthogonal matrix, or a table of matrices
// piecewise constant in |y|.
class MatrixFamily {
 public:
  enum class Kind { DiagonalScalar, Rotation, GeneralTable };

  static MatrixFamily diagonal(ScalarMap s);
  // s(y) Q for a fixed orthogonal Q.
  static MatrixFamily rotation(Matrix q, ScalarMap scale = ScalarMap::constant(1.0));
  // s(y) R(theta0 + theta1 |y|) in the plane.
  static MatrixFamily planar_rotation(double theta0, double theta1,
                                      ScalarMap scale = ScalarMap::constant(1.0));
  // mats[i] on edges[i] <= |y| < edges[i+1]; edges ascending, size mats + 1.
  static MatrixFamily table(std::vector<double> edges, std::vector<Matrix> mats);

  Kind kind() const { return kind_; }
  Matrix operator()(const Point& y) const;
  // The scalar s with |A(y)x| = |s(y)| |x| for every x, when one exists.
  std::optional<ScalarMap> radial_scale() const;
  Var var() const;
  std::vector<double> breakpoints() const;
  void validate(int n) const;

 private:
  Kind kind_ = Kind::DiagonalScalar;
  ScalarMap scale_;
  Matrix fixed_;
  bool planar_ = false;
  double theta0_ = 0.0, theta1_ = 0.0;
  std::vector<double> edges_;
  std::vector<Matrix> mats_;
};

}  // namespace hausdorff
