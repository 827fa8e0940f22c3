#include <doctest.h>

#include "support/fixtures.hpp"

#include "hausdorff/operators.hpp"

#include <cmath>
#include <random>

using namespace hausdorff;
using fixtures::point1;
using fixtures::point2;

namespace {

const QuadratureSpec kQuad;

OperatorSpec unit_cube_operator(std::vector<std::string> scales) {
  OperatorSpec op;
  op.m = static_cast<int>(scales.size());
  op.n = 1;
  op.kernel = KernelSpec::closed(PowerExpr::parse("1"), Support::cube(0, 1), Convention::HybridPhi);
  for (const auto& s : scales) op.families.push_back(MatrixFamily::diagonal(PowerExpr::parse(s)));
  return op;
}

TestFunction opaque_copy(const TestFunction& f) {
  return TestFunction::opaque([f](const Point& x) { return f(x); }, true);
}

}  // namespace

TEST_CASE("Frobenius norm and condition product") {
  CHECK(frobenius_norm(Matrix(Matrix::Identity(3, 3))) == doctest::Approx(std::sqrt(3.0)));
  Matrix d(2, 2);
  d << 1, 0, 0, 2;
  CHECK(frobenius_norm(d) == doctest::Approx(std::sqrt(5.0)));
  Matrix s(2, 2);
  s << 1, 1, 0, 1;
  CHECK(frobenius_norm(s) == doctest::Approx(std::sqrt(3.0)));
  CHECK(condition_product(d) == doctest::Approx(2.5));
  Matrix z = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(condition_product(z), SingularMatrix);
}

TEST_CASE("rho bound") {
  const std::vector<Point> sample{point2(0.5, 0.1), point2(-2.0, 3.0), point2(0.01, -0.2)};
  OperatorSpec diag{1, 2, KernelSpec::closed(PowerExpr::parse("1"), Support::annulus(0.1, 4), Convention::HybridPhi),
                    {MatrixFamily::diagonal(PowerExpr::parse("3*|y|^0.5"))}};
  CHECK(*rho_bound(diag, sample) == doctest::Approx(2.0).epsilon(1e-15));
  OperatorSpec rot = diag;
  rot.families = {MatrixFamily::planar_rotation(0.3, 1.1, PowerExpr::parse("|y|"))};
  CHECK(*rho_bound(rot, sample) == doctest::Approx(2.0).epsilon(1e-15));
  Matrix d(2, 2);
  d << 1, 0, 0, 2;
  OperatorSpec tab = diag;
  tab.families = {MatrixFamily::table({0.0, kInf}, {d})};
  CHECK(*rho_bound(tab, sample) == doctest::Approx(2.5).epsilon(1e-14));
  OperatorSpec zero = diag;
  zero.families = {MatrixFamily::diagonal(PowerExpr::parse("0"))};
  CHECK_THROWS_AS(rho_bound(zero, sample), SingularMatrix);
}

TEST_CASE("apply examples") {
  const OperatorSpec one = unit_cube_operator({"y1"});
  CHECK(apply_operator(one, {TestFunction::ball(1.0)}, point1(2.0), kQuad) == doctest::Approx(0.5).epsilon(1e-12));
  const OperatorSpec two = unit_cube_operator({"y1", "2*y1"});
  CHECK(apply_operator(two, {TestFunction::ball(1.0), TestFunction::ball(1.0)}, point1(1.0), kQuad) ==
        doctest::Approx(0.5).epsilon(1e-12));
  for (double x : {0.3, 1.0, 7.0})
    CHECK(apply_operator(one, {TestFunction::power(-0.25)}, point1(x), kQuad) ==
          doctest::Approx(4.0 / 3.0 * std::pow(x, -0.25)).epsilon(1e-12));
}

TEST_CASE("apply examples through the numeric path") {
  const OperatorSpec one = unit_cube_operator({"y1"});
  CHECK(apply_operator(one, {opaque_copy(TestFunction::ball(1.0))}, point1(2.0), kQuad) ==
        doctest::Approx(0.5).epsilon(1e-7));
  CHECK(apply_operator(one, {opaque_copy(TestFunction::power(-0.25))}, point1(2.0), kQuad) ==
        doctest::Approx(4.0 / 3.0 * std::pow(2.0, -0.25)).epsilon(1e-7));
}

TEST_CASE("symbolic and numeric images agree in the plane") {
  OperatorSpec op{2, 2,
                  KernelSpec::closed(PowerExpr::parse("1.5*|y|^-0.5"), Support::annulus(0.25, 3),
                                     Convention::HausdorffPhi),
                  {MatrixFamily::diagonal(PowerExpr::parse("|y|^0.7")),
                   MatrixFamily::planar_rotation(0.4, -1.2, PowerExpr::parse("2*|y|^-0.3"))}};
  const TestFunction f = TestFunction::power(0.4, 0.5, 2.0), g = TestFunction::power(-0.2, 0.0, 5.0);
  for (const Point& x : {point2(1.0, 0.0), point2(-0.3, 0.9), point2(1.5, 1.5)}) {
    const double sym = apply_operator(op, {f, g}, x, kQuad);
    const double num = apply_operator(op, {opaque_copy(f), opaque_copy(g)}, x, kQuad);
    CHECK(num == doctest::Approx(sym).epsilon(1e-6));
  }
}

TEST_CASE("Hardy averages") {
  CHECK(apply_hardy_1d(TestFunction::annulus(0.0, 1.0), 2.0, kQuad) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(apply_hardy_1d(TestFunction::power(1.0, 0.0, 1.0), 1.0, kQuad) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(apply_hardy_1d(TestFunction::power(-0.5, 1.0, kInf), 4.0, kQuad) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(apply_hardy_1d(TestFunction::power(-1.0), 1.0, kQuad), DivergentError);
}

TEST_CASE("the unit-cube average recovers the Hardy operator") {
  const OperatorSpec op = unit_cube_operator({"y1"});
  const std::vector<TestFunction> fs{TestFunction::power(-0.5, 1.0, kInf), TestFunction::power(0.3, 0.0, 2.0),
                                     TestFunction::sum({TestFunction::ball(1.5), TestFunction::power(-0.7, 0.5, 4.0)})};
  for (const auto& f : fs)
    for (double x : {0.2, 1.0, 3.0, 10.0})
      CHECK(apply_operator(op, {f}, point1(x), kQuad) ==
            doctest::Approx(apply_hardy_1d(f, x, kQuad)).epsilon(1e-9));
}

TEST_CASE("matrix families bound |A x| from below") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix d(2, 2);
  d << 1, 0.5, 0, 2;
  const std::vector<MatrixFamily> families{MatrixFamily::diagonal(PowerExpr::parse("|y|^0.5")),
                                           MatrixFamily::planar_rotation(0.1, 0.7, PowerExpr::parse("3*|y|")),
                                           MatrixFamily::table({0.0, 1.0, kInf}, {d, Matrix(d.transpose())})};
  for (const auto& fam : families)
    for (int k = 0; k < 50; ++k) {
      const Point y = point2(u(gen), u(gen));
      Point x = point2(u(gen), u(gen));
      x /= x.norm();
      const Matrix A = fam(y);
      CHECK((A * x).norm() >= (1.0 - 1e-12) / frobenius_norm(Matrix(A.inverse())));
      CHECK((A * x).norm() <= (1.0 + 1e-12) * frobenius_norm(A));
    }
}

TEST_CASE("eigenfunction identity for scalar families") {
  OperatorSpec op{1, 3, KernelSpec::closed(PowerExpr::parse("|y|^0.5"), Support::annulus(0.5, 2), Convention::HybridPhi),
                  {MatrixFamily::diagonal(PowerExpr::parse("|y|^-1"))}};
  const TestFunction f = TestFunction::power(0.75);
  Point x(3);
  x << 1.0, 0.0, 0.0;
  const double K = apply_operator(op, {f}, x, kQuad);
  x << 0.2, -3.0, 1.0;
  CHECK(apply_operator(op, {f}, x, kQuad) / f(x) == doctest::Approx(K).epsilon(1e-12));
}

TEST_CASE("divergent operator integrals") {
  const OperatorSpec op = unit_cube_operator({"y1"});
  CHECK_THROWS_AS(apply_operator(op, {TestFunction::power(-1.0)}, point1(1.0), kQuad), DivergentError);
}

TEST_CASE("operator validation") {
  OperatorSpec op = fixtures::hardy_operator();
  op.families = {MatrixFamily::planar_rotation(0.0, 0.0)};
  CHECK_THROWS_AS(op.validate(), InvalidArgument);
  OperatorSpec missing = fixtures::hardy_operator();
  missing.m = 2;
  CHECK_THROWS_AS(missing.validate(), InvalidArgument);
  CHECK_NOTHROW(fixtures::hardy_operator().validate());
}

TEST_CASE("kernel grammar") {
  const PowerExpr e = PowerExpr::parse("2*|y|^-0.5*y1^2");
  CHECK(e.coef == 2.0);
  CHECK(e.radial_exp == -0.5);
  CHECK(e.first_exp == 2.0);
  CHECK(e.var() == Var::General);
  CHECK(PowerExpr::parse("y1").var() == Var::First);
  CHECK(PowerExpr::parse("3").var() == Var::Const);
  CHECK(PowerExpr::parse(e.to_string()).coef == 2.0);
  CHECK_THROWS_AS(PowerExpr::parse("sin(y)"), InvalidArgument);
  CHECK(convention_from_string("hybrid_phi") == Convention::HybridPhi);
}

TEST_CASE("kernel densities by convention") {
  const Point y = point2(0.6, 0.8);
  const auto phi = KernelSpec::closed(PowerExpr::parse("|y|^2"), Support::all(), Convention::HausdorffPhi);
  CHECK(phi.density(y) == doctest::Approx(1.0));
  const auto hyb = KernelSpec::closed(PowerExpr::parse("|y|^2"), Support::annulus(0, 0.5), Convention::HybridPhi);
  CHECK(hyb.density(y) == 0.0);
  CHECK(hyb.scaled(3.0).density(point2(0.3, 0.0)) == doctest::Approx(0.27));
}
