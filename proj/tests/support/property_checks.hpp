#pragma once

// Seeded property suites shared by the unit tests and the acceptance runner.
// Each returns how many cases ran and a description of the first failure.

#include "fixtures.hpp"

#include "hausdorff/constants.hpp"
#include "hausdorff/operators.hpp"
#include "hausdorff/spaces.hpp"
#include "hausdorff/verify.hpp"
#include "hausdorff/weights.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace hausdorff::checks {

struct Summary {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void record(bool pass, const std::string& what) {
    ++cases;
    if (pass) return;
    if (failures++ == 0) first_failure = what;
  }
  void record_error(int seed, const std::exception& e) {
    record(false, "seed " + std::to_string(seed) + " threw: " + e.what());
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed * 0x9E3779B97F4A7C15ULL + 1) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 gen_;
};

inline bool close(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline std::string describe(int seed, double got, double want) {
  std::ostringstream os;
  os.precision(17);
  os << "seed " << seed << ": got " << got << ", want " << want;
  return os.str();
}

// One or two compactly supported power pieces inside [2^-3, 2^4].
inline TestFunction random_compact_function(Rng& r) {
  std::vector<PowerTerm> terms;
  const int count = r.integer(1, 2);
  for (int i = 0; i < count; ++i) {
    const double r0 = std::exp2(r.uniform(-3.0, 1.0));
    terms.push_back({r.uniform(0.5, 2.0), r.uniform(-1.5, 1.5), r0, r0 * std::exp2(r.uniform(0.5, 3.0))});
  }
  return TestFunction::from_terms(terms);
}

inline SpaceSpec random_space(Rng& r, int n) {
  SpaceSpec s;
  s.kind = static_cast<SpaceKind>(r.integer(0, 3));
  s.q = r.uniform(1.0, 4.0);
  s.p = r.uniform(1.0, 4.0);
  s.alpha = r.uniform(-1.0, 1.0);
  s.omega = Weight::power(r.uniform(-n + 0.2, 2.0), n);
  s.v = Weight::power(r.uniform(-n + 0.2, 2.0), n);
  if (s.kind == SpaceKind::CentralMorrey) s.lambda = r.uniform(-1.0 / s.q + 0.05, 0.5);
  if (s.kind == SpaceKind::MorreyHerz) s.lambda = r.uniform(0.0, 1.0);
  return s;
}

inline Summary norm_homogeneity(int cases, std::uint64_t base_seed = 0) {
  Summary out;
  const QuadratureSpec quad;
  const DyadicRange range = DyadicRange::standard();
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 3);
      const SpaceSpec s = random_space(r, n);
      const TestFunction f = random_compact_function(r);
      const double c = (r.coin() ? 1.0 : -1.0) * std::exp2(r.uniform(-4.0, 4.0));
      const NormResult a = space_norm(s, f, range, quad);
      const NormResult b = space_norm(s, TestFunction::scaled(c, f), range, quad);
      const double tol = a.exact && b.exact ? 1e-10 : 1e-6;
      out.record(close(b.value, std::abs(c) * a.value, tol), describe(k, b.value, std::abs(c) * a.value));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

inline Summary dilation_law(int cases, std::uint64_t base_seed = 1000) {
  Summary out;
  const QuadratureSpec quad;
  const DyadicRange range = DyadicRange::standard();
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 3);
      SpaceSpec s;
      s.kind = SpaceKind::Lebesgue;
      s.q = r.uniform(1.0, 4.0);
      s.omega = s.v = Weight::power(r.uniform(-n + 0.2, 2.0), n);
      const TestFunction f = random_compact_function(r);
      const double delta = std::exp2(r.uniform(-3.0, 3.0));
      const double a = space_norm(s, f, range, quad).value;
      const double b = space_norm(s, f.dilate(delta), range, quad).value;
      const double want = std::pow(delta, -(n + s.omega.exponent()) / s.q) * a;
      out.record(close(b, want, 1e-10), describe(k, b, want));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

inline Summary morrey_herz_reduction(int cases, std::uint64_t base_seed = 2000) {
  Summary out;
  const QuadratureSpec quad;
  const DyadicRange range = DyadicRange::standard();
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 3);
      SpaceSpec s = random_space(r, n);
      s.kind = SpaceKind::Herz;
      s.lambda = 0.0;
      const TestFunction f = random_compact_function(r);
      const double herz = space_norm(s, f, range, quad).value;
      s.kind = SpaceKind::MorreyHerz;
      const double mh = space_norm(s, f, range, quad).value;
      out.record(close(mh, herz, 1e-12), describe(k, mh, herz));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

inline TheoremParams random_theorem_params(Rng& r, std::uint64_t seed) {
  static const TheoremId ids[] = {TheoremId::T3_1, TheoremId::C3_1_1, TheoremId::C3_1_2, TheoremId::T3_2,
                                  TheoremId::C3_2_1, TheoremId::C3_2_2, TheoremId::T3_3, TheoremId::C3_3_1};
  const TheoremId id = ids[r.integer(0, 7)];
  const int m = r.integer(1, 2);
  const bool rotation = !is_corollary(id) && r.coin();
  const int n = rotation ? 2 : (is_hardy_cesaro(id) ? r.integer(1, 2) : r.integer(1, 3));
  return random_admissible_params(id, m, n, rotation ? FamilyShape::Rotation : FamilyShape::Diagonal, seed);
}

// Every constant is positively homogeneous of degree one in the kernel.
inline Summary kernel_linearity(int cases, std::uint64_t base_seed = 3000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      TheoremParams p;
      if (k % 5 == 4) {
        p = fixtures::muckenhoupt_c4_params(r.uniform(0.1, 1.0), r.uniform(1.2, 4.0));
        p.index[0].lambda = r.uniform(-0.2, -0.05);
        p.index[0].q = r.uniform(2.0, 6.0);
      } else {
        p = random_theorem_params(r, base_seed + k);
      }
      const double c = std::exp2(r.uniform(-4.0, 4.0));
      const ConstantResult a = evaluate_constant(p, quad);
      p.op.kernel = p.op.kernel.scaled(c);
      const ConstantResult b = evaluate_constant(p, quad);
      const double tol = a.closed_form && b.closed_form ? 1e-12 : 1e-8;
      out.record(close(b.value, c * a.value, tol), describe(k, b.value, c * a.value));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

inline OperatorSpec random_diagonal_operator(Rng& r, int m, int n) {
  const double a = r.uniform(0.1, 1.0);
  OperatorSpec op;
  op.m = m;
  op.n = n;
  op.kernel = KernelSpec::closed(PowerExpr{r.uniform(0.5, 2.0), r.uniform(-1.0, 1.0), 0.0},
                                 Support::annulus(a, a * std::exp2(r.uniform(0.5, 3.0))),
                                 Convention::HybridPhi);
  for (int i = 0; i < m; ++i)
    op.families.push_back(MatrixFamily::diagonal(PowerExpr{r.uniform(0.5, 2.0), r.uniform(-1.0, 1.0), 0.0}));
  return op;
}

inline Point random_point(Rng& r, int n) {
  Point x(n);
  for (int j = 0; j < n; ++j) x(j) = r.uniform(-1.0, 1.0);
  if (x.norm() == 0.0) x(0) = 1.0;
  return x * std::exp2(r.uniform(-2.0, 2.0)) / x.norm();
}

// Additivity and homogeneity in the first argument of a bilinear operator.
inline Summary operator_multilinearity(int cases, std::uint64_t base_seed = 4000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 2);
      OperatorSpec op = random_diagonal_operator(r, 2, n);
      if (n == 2 && r.coin())
        op.families[1] = MatrixFamily::planar_rotation(r.uniform(0.0, 6.0), r.uniform(-2.0, 2.0),
                                                       PowerExpr{r.uniform(0.5, 2.0), r.uniform(-1.0, 1.0), 0.0});
      const TestFunction g = random_compact_function(r), h = random_compact_function(r);
      const TestFunction w = random_compact_function(r);
      const double c = r.uniform(-3.0, 3.0);
      const Point x = random_point(r, n);
      const double hg = apply_operator(op, {g, w}, x, quad);
      const double hh = apply_operator(op, {h, w}, x, quad);
      const double sum = apply_operator(op, {TestFunction::sum({g, h}), w}, x, quad);
      const double scaled = apply_operator(op, {TestFunction::scaled(c, g), w}, x, quad);
      const double scale = std::max({std::abs(hg), std::abs(hh), 1e-12});
      const bool ok = std::abs(sum - (hg + hh)) <= 1e-7 * scale && std::abs(scaled - c * hg) <= 1e-7 * scale;
      out.record(ok, describe(k, sum, hg + hh) + "; scaled " + std::to_string(scaled) + " vs " +
                         std::to_string(c * hg));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

// H(f) / prod f_i(x) is the same at every x for pure powers and scalar families.
inline Summary eigenfunction_constancy(int cases, std::uint64_t base_seed = 5000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int m = r.integer(1, 2), n = r.integer(1, 3);
      const OperatorSpec op = random_diagonal_operator(r, m, n);
      std::vector<TestFunction> fs;
      for (int i = 0; i < m; ++i) fs.push_back(TestFunction::power(r.uniform(-1.0, 1.0)));
      auto ratio_at = [&](const Point& x) {
        double prod = 1.0;
        for (const auto& f : fs) prod *= f(x);
        return apply_operator(op, fs, x, quad) / prod;
      };
      const double first = ratio_at(random_point(r, n));
      bool ok = std::isfinite(first) && first > 0.0;
      double worst = first;
      for (int t = 0; t < 10 && ok; ++t) {
        const double v = ratio_at(random_point(r, n));
        if (!close(v, first, 1e-9)) {
          ok = false;
          worst = v;
        }
      }
      out.record(ok, describe(k, worst, first));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

// Averages are controlled by the A_xi quotient of the ball (Holder).
inline Summary average_control(int cases, std::uint64_t base_seed = 6000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 3);
      const double xi = r.uniform(1.1, 4.0);
      const double gamma = r.uniform(-n + 0.05, n * (xi - 1.0) - 0.05);
      const Weight w = Weight::power(gamma, n);
      const double R = std::exp2(r.uniform(-3.0, 5.0));
      const RadialProfile f(random_compact_function(r));
      const auto ap = ap_quotient(w, xi, Point::Zero(n), R, quad);
      if (!ap) {
        out.record(false, "seed " + std::to_string(k) + ": A_xi quotient diverged for an A_xi weight");
        continue;
      }
      const double ball = unit_ball_volume(n) * std::pow(R, n);
      const double lhs = f.lq_integral(1.0, 0.0, n, 0.0, R, quad).value / ball;
      const double mass = ball_mass(w, Point::Zero(n), R, quad);
      const double rhs = std::pow(*ap, 1.0 / xi) * std::pow(f.lq_integral(xi, gamma, n, 0.0, R, quad).value / mass, 1.0 / xi);
      out.record(lhs <= rhs * (1.0 + 1e-10), describe(k, lhs, rhs));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

// Doubling: w(B(0, t R)) / w(B(0, R)) = t^(n+gamma) <= t^(n xi) for A_xi power weights.
inline Summary doubling(int cases, std::uint64_t base_seed = 7000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const int n = r.integer(1, 3);
      const double xi = r.uniform(1.0, 4.0);
      const double gamma = r.uniform(-n + 0.05, n * (xi - 1.0));
      const Weight w = Weight::power(gamma, n);
      const double R = std::exp2(r.uniform(-10.0, 10.0)), t = std::exp2(r.uniform(0.01, 6.0));
      const double ratio = ball_mass(w, Point::Zero(n), t * R, quad) / ball_mass(w, Point::Zero(n), R, quad);
      const bool exact = close(ratio, std::pow(t, n + gamma), 1e-10);
      const bool bounded = ratio <= std::pow(t, n * xi) * (1.0 + 1e-12);
      out.record(power_in_ap(gamma, n, xi) && exact && bounded, describe(k, ratio, std::pow(t, n * xi)));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

// Closed-form and quadrature routes agree on grammar configurations.
inline Summary constant_routes_agree(int cases, double tol, std::uint64_t base_seed = 8000) {
  Summary out;
  const QuadratureSpec quad;
  for (int k = 0; k < cases; ++k) {
    Rng r(base_seed + k);
    try {
      const TheoremParams p = random_theorem_params(r, base_seed + k);
      const ConstantResult a = evaluate_constant(p, quad, ConstantMethod::ClosedForm);
      const ConstantResult b = evaluate_constant(p, quad, ConstantMethod::Quadrature);
      out.record(close(a.value, b.value, tol), describe(k, b.value, a.value));
    } catch (const std::exception& e) {
      out.record_error(k, e);
    }
  }
  return out;
}

}  // namespace hausdorff::checks
