#include <doctest.h>

#include "support/fixtures.hpp"

#include "hausdorff/verify.hpp"

#include <cmath>

using namespace hausdorff;
using fixtures::hardy_params;

namespace {

const QuadratureSpec kQuad;
const DyadicRange kRange = DyadicRange::standard();

// ||H f_eps|| / ||f_eps|| in L^2 for f_eps = x^(-1/2-eps) on [1, inf), from
// H f_eps(x) = (x^(1/2-eps) - 1) / ((1/2-eps) x).
double hardy_ratio(double eps) {
  const double num = (1.0 / (2.0 * eps) - 2.0 / (0.5 + eps) + 1.0) / ((0.5 - eps) * (0.5 - eps));
  return std::sqrt(num * 2.0 * eps);
}

TheoremParams hardy_l2() { return hardy_params(TheoremId::C3_2_2, 0.0, 0.0); }

}  // namespace

TEST_CASE("extremal functions") {
  const auto morrey = build_extremal(hardy_params(TheoremId::T3_1, -0.25, 0.0, 2.0, 2.0, Convention::HybridPhi), 0.0);
  REQUIRE(morrey.size() == 1);
  CHECK(morrey[0].exponent() == doctest::Approx(-0.25));
  const auto mh = build_extremal(hardy_params(TheoremId::T3_3, 0.125, -0.125, 2.0, 2.0, Convention::HybridPhi), 0.0);
  CHECK(mh[0].exponent() == doctest::Approx(-0.25));
  CHECK_THROWS_AS(build_extremal(hardy_params(TheoremId::T3_2, 0.0, -0.25, 2.0, 2.0, Convention::HybridPhi), 0.0),
                  HypothesisViolation);
  const auto herz = build_extremal(hardy_l2(), 0.1);
  CHECK(herz[0].exponent() == doctest::Approx(-0.6));
  CHECK(herz[0].inner() == doctest::Approx(1.0));
}

TEST_CASE("eigenfunction ratio equals the constant") {
  const TheoremParams p = hardy_params(TheoremId::C3_1_2, -0.25, 0.0);
  const RatioReport r = empirical_ratio(p, build_extremal(p, 0.0), kRange, kQuad);
  CHECK(r.verdict == Verdict::ExactMatch);
  CHECK(r.ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(r.constant_id == ConstantId::C1_2);
  CHECK(r.exact);
}

TEST_CASE("Hardy ratio at a single eps") {
  const RatioReport r = empirical_ratio(hardy_l2(), build_extremal(hardy_l2(), 0.05), kRange, kQuad);
  CHECK(r.ratio > 1.8);
  CHECK(r.ratio < 2.0);
  CHECK(r.ratio == doctest::Approx(hardy_ratio(0.05)).epsilon(1e-10));
  CHECK(r.constant == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("zero inputs") {
  CHECK_THROWS_AS(empirical_ratio(hardy_l2(), {TestFunction()}, kRange, kQuad), ZeroDenominator);
}

TEST_CASE("Hardy sharpness sweep") {
  const SweepResult s = sharpness_sweep(hardy_l2(), default_eps_list(), kRange, kQuad);
  REQUIRE(s.reports.size() == 5);
  CHECK(s.strictly_increasing);
  CHECK(s.bounded);
  for (const auto& r : s.reports) {
    CHECK(r.ratio == doctest::Approx(hardy_ratio(r.epsilon)).epsilon(1e-10));
    CHECK(r.ratio <= 2.0 + 1e-3);
  }
  CHECK(s.reports.back().ratio >= 1.95);
}

TEST_CASE("single-element sweep is one ratio") {
  const SweepResult s = sharpness_sweep(hardy_l2(), {0.1}, kRange, kQuad);
  const RatioReport r = empirical_ratio(hardy_l2(), build_extremal(hardy_l2(), 0.1), kRange, kQuad);
  CHECK(s.reports.at(0).ratio == r.ratio);
  CHECK_THROWS_AS(sharpness_sweep(hardy_l2(), {0.1, 0.2}, kRange, kQuad), InvalidArgument);
  CHECK_THROWS_AS(sharpness_sweep(hardy_l2(), {}, kRange, kQuad), InvalidArgument);
}

TEST_CASE("Herz corollary sweep approaches its constant from below") {
  const TheoremParams p = hardy_params(TheoremId::C3_2_2, 0.0, -0.25);
  const SweepResult s = sharpness_sweep(p, default_eps_list(), kRange, kQuad);
  CHECK(s.strictly_increasing);
  CHECK(s.bounded);
  const double last = s.reports.back().ratio;
  CHECK(last <= 4.0 / 3.0);
  CHECK(last >= 0.95 * 4.0 / 3.0);
  const RatioReport two = two_sided_check(p, 10.0, kRange, kQuad);
  CHECK(two.verdict == Verdict::LowerBoundOk);
}

TEST_CASE("two-sided check on the eigenfunction corollaries") {
  const RatioReport a = two_sided_check(hardy_params(TheoremId::C3_1_2, -0.25, 0.0), 10.0, kRange, kQuad);
  CHECK(a.verdict == Verdict::ExactMatch);
  CHECK(std::abs(a.relative_gap) < 1e-3);
  const RatioReport b = two_sided_check(hardy_params(TheoremId::C3_3_1, 0.125, -0.125), 10.0, kRange, kQuad);
  CHECK(b.verdict == Verdict::ExactMatch);
  CHECK(b.constant == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("two-sided check on a rotation family") {
  TheoremParams p;
  p.theorem = TheoremId::T3_1;
  p.m = 1;
  p.n = 2;
  IndexExponents e;
  e.lambda = -0.25;
  e.q = 2.0;
  p.index = {e};
  p.target.lambda = -0.25;
  p.target.q = 2.0;
  p.op = OperatorSpec{1, 2, KernelSpec::closed(PowerExpr::parse("|y|"), Support::annulus(0.25, 2), Convention::HausdorffPhi),
                      {MatrixFamily::planar_rotation(0.3, 1.0, PowerExpr::parse("|y|^0.5"))}};
  const RatioReport r = two_sided_check(p, 10.0, kRange, kQuad);
  CHECK(r.verdict != Verdict::Violation);
  CHECK(r.ratio <= 10.0 * r.constant);
}

TEST_CASE("an infinite constant gives a vacuous upper bound") {
  TheoremParams p = hardy_params(TheoremId::C3_1_2, -0.25, 0.0);
  p.op.kernel = KernelSpec::closed(PowerExpr::parse("y1^-1"), Support::cube(0, 1), Convention::HardyCesaroPsi);
  const RatioReport r = two_sided_check(p, 10.0, kRange, kQuad);
  CHECK(std::isinf(r.constant));
  CHECK(r.vacuous);
  CHECK(r.verdict == Verdict::UpperBoundOk);
}

TEST_CASE("spaces attached to a theorem") {
  const TheoremParams p = hardy_params(TheoremId::C3_1_2, -0.25, 0.0);
  CHECK(source_space(p, 0).kind == SpaceKind::CentralMorrey);
  CHECK(target_space(hardy_l2()).kind == SpaceKind::Herz);
  CHECK_THROWS_AS(target_space(fixtures::muckenhoupt_c4_params(1, 2)), InvalidArgument);
}

TEST_CASE("random admissible parameters") {
  for (TheoremId id : {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3})
    for (int m = 1; m <= 2; ++m)
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TheoremParams p = random_admissible_params(id, m, 2, FamilyShape::Rotation, seed);
        CHECK(validate_hypotheses(p).empty());
        CHECK(known_scale_factor(p) <= kScaleBudget);
        const TheoremParams again = random_admissible_params(id, m, 2, FamilyShape::Rotation, seed);
        CHECK(again.index[0].q == p.index[0].q);
      }
  CHECK(known_scale_factor(hardy_params(TheoremId::C3_1_2, -0.25, 0.0)) == doctest::Approx(1.0));
  const auto fs = random_test_functions(2, 9);
  CHECK(fs.size() == 2);
  for (const auto& f : fs) CHECK(f.is_symbolic());
}
