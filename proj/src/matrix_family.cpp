#include "hausdorff/matrix_family.hpp"

#include <algorithm>
#include <cmath>

namespace hausdorff {

MatrixFamily MatrixFamily::diagonal(ScalarMap s) {
  MatrixFamily f;
  f.kind_ = Kind::DiagonalScalar;
  f.scale_ = std::move(s);
  return f;
}

MatrixFamily MatrixFamily::rotation(Matrix q, ScalarMap scale) {
  if (q.rows() != q.cols() || q.rows() == 0) throw InvalidArgument("rotation matrix must be square");
  const Matrix err = q.transpose() * q - Matrix::Identity(q.rows(), q.cols());
  if (err.norm() > 1e-10) throw InvalidArgument("rotation matrix must be orthogonal");
  MatrixFamily f;
  f.kind_ = Kind::Rotation;
  f.fixed_ = std::move(q);
  f.scale_ = std::move(scale);
  return f;
}

MatrixFamily MatrixFamily::planar_rotation(double theta0, double theta1, ScalarMap scale) {
  MatrixFamily f;
  f.kind_ = Kind::Rotation;
  f.planar_ = true;
  f.theta0_ = theta0;
  f.theta1_ = theta1;
  f.scale_ = std::move(scale);
  return f;
}

MatrixFamily MatrixFamily::table(std::vector<double> edges, std::vector<Matrix> mats) {
  if (mats.empty() || edges.size() != mats.size() + 1)
    throw InvalidArgument("matrix table needs one more edge than matrices");
  if (!std::is_sorted(edges.begin(), edges.end()) || edges.front() < 0.0)
    throw InvalidArgument("matrix table edges must be nonnegative and ascending");
  for (const auto& m : mats) {
    if (m.rows() != m.cols() || m.rows() != mats.front().rows())
      throw InvalidArgument("matrix table entries must be square and equal in size");
    if (!Eigen::FullPivLU<Matrix>(m).isInvertible()) throw SingularMatrix("matrix table entry is singular");
  }
  MatrixFamily f;
  f.kind_ = Kind::GeneralTable;
  f.edges_ = std::move(edges);
  f.mats_ = std::move(mats);
  return f;
}

Matrix MatrixFamily::operator()(const Point& y) const {
  const int n = static_cast<int>(y.size());
  switch (kind_) {
    case Kind::DiagonalScalar:
      return scale_(y) * Matrix::Identity(n, n);
    case Kind::Rotation: {
      if (!planar_) return scale_(y) * fixed_;
      const double th = theta0_ + theta1_ * y.norm();
      Matrix r(2, 2);
      r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      return scale_(y) * r;
    }
    case Kind::GeneralTable: {
      const double r = y.norm();
      auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
      std::size_t i = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin() - 1);
      i = std::min(i, mats_.size() - 1);
      return mats_[i];
    }
  }
  return {};
}

std::optional<ScalarMap> MatrixFamily::radial_scale() const {
  if (kind_ == Kind::GeneralTable) return std::nullopt;
  return scale_;
}

Var MatrixFamily::var() const {
  switch (kind_) {
    case Kind::DiagonalScalar:
      return scale_.var();
    case Kind::Rotation:
      return planar_ && theta1_ != 0.0 ? join(scale_.var(), Var::Radius) : scale_.var();
    case Kind::GeneralTable:
      return Var::Radius;
  }
  return Var::General;
}

std::vector<double> MatrixFamily::breakpoints() const {
  if (kind_ == Kind::GeneralTable) return edges_;
  return scale_.breakpoints();
}

void MatrixFamily::validate(int n) const {
  if (kind_ == Kind::Rotation && planar_ && n != 2)
    throw InvalidArgument("planar rotation family requires n = 2");
  if (kind_ == Kind::Rotation && !planar_ && fixed_.rows() != n)
    throw InvalidArgument("rotation matrix size differs from n");
  if (kind_ == Kind::GeneralTable && mats_.front().rows() != n)
    throw InvalidArgument("matrix table size differs from n");
  if (auto e = scale_.power(); e && kind_ != Kind::GeneralTable && e->coef == 0.0)
    throw SingularMatrix("scale expression is identically zero");
}

}  // namespace hausdorff
