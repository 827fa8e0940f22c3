#include "hausdorff/operators.hpp"

#include "hausdorff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hausdorff {

void OperatorSpec::validate() const {
  if (m < 1) throw InvalidArgument("operator needs m >= 1");
  if (n < 1) throw InvalidArgument("operator needs n >= 1");
  if (static_cast<int>(families.size()) != m) throw InvalidArgument("operator needs exactly m matrix families");
  for (const auto& f : families) {
    f.validate(n);
    if (kernel.convention() == Convention::HardyCesaroPsi && f.kind() != MatrixFamily::Kind::DiagonalScalar)
      throw InvalidArgument("Hardy-Cesaro kernels need diagonal scalar families");
  }
  const Support& s = kernel.support();
  const bool nonneg_cube = s.kind == Support::Kind::Cube && s.lo >= 0.0;
  auto check_first = [&](const PowerExpr& e) {
    if (e.first_exp != 0.0 && e.first_exp != std::round(e.first_exp) && !nonneg_cube)
      throw InvalidArgument("non-integer powers of y1 need a cube support with lo >= 0");
  };
  if (kernel.expr()) check_first(*kernel.expr());
  for (const auto& f : families)
    if (auto sc = f.radial_scale())
      if (auto p = sc->power()) check_first(*p);
}

Var OperatorSpec::var() const {
  Var v = kernel.density_var(n);
  for (const auto& f : families) v = join(v, f.var());
  return v;
}

Point Slice::embed(double t) const {
  Point y = Point::Constant(n, fill);
  if (var == Var::Radius) y.setZero();
  y(0) = t;
  return y;
}

std::optional<Slice> slice_for(const OperatorSpec& spec, Var v) {
  if (v == Var::General) return std::nullopt;
  const int n = spec.n;
  const Support& s = spec.kernel.support();
  Slice sl;
  sl.n = n;
  if (s.kind == Support::Kind::Cube) {
    if (v == Var::Radius && !(n == 1 && s.lo >= 0.0)) return std::nullopt;
    sl.var = Var::First;
    sl.t_lo = s.lo;
    sl.t_hi = s.hi;
    sl.measure_coef = std::pow(s.hi - s.lo, n - 1);
    sl.fill = 0.5 * (s.lo + s.hi);
    return sl;
  }
  if (v == Var::First) return std::nullopt;
  sl.var = Var::Radius;
  sl.t_lo = s.kind == Support::Kind::Annulus ? s.lo : 0.0;
  sl.t_hi = s.kind == Support::Kind::Annulus ? s.hi : kInf;
  sl.measure_coef = sphere_area(n);
  sl.measure_exp = n - 1;
  return sl;
}

Estimate integrate_support(const OperatorSpec& spec, Var v,
                           const std::function<double(const Point&)>& g,
                           const std::vector<double>& breaks, const QuadratureSpec& quad) {
  const int n = spec.n;
  const Support& s = spec.kernel.support();
  Estimate e;
  if (auto sl = slice_for(spec, v)) {
    auto h = [&](double t) {
      const double w = sl->measure(t);
      return w == 0.0 ? 0.0 : w * g(sl->embed(t));
    };
    if (sl->t_lo >= 0.0) {
      e = quad::integrate_log(h, sl->t_lo, sl->t_hi, breaks, quad);
    } else {
      e = quad::integrate_line(h, sl->t_lo, sl->t_hi, breaks, quad);
    }
    quad::require_converged(e, quad, "operator integral");
    return e;
  }
  if (s.kind != Support::Kind::Cube) {
    const double lo = s.kind == Support::Kind::Annulus ? s.lo : 0.0;
    const double hi = s.kind == Support::Kind::Annulus ? s.hi : kInf;
    auto radial = [&](double t) {
      Estimate a = quad::sphere_integral(n, [&](const Point& th) { return g(t * th); }, quad);
      return std::pow(t, n - 1) * a.value;
    };
    e = quad::integrate_log(radial, lo, hi, breaks, quad);
    quad::require_converged(e, quad, "operator integral");
    return e;
  }
  if (n == 1) {
    e = quad::integrate_line([&](double t) { return g(Point::Constant(1, t)); }, s.lo, s.hi, breaks, quad);
  } else if (n == 2) {
    auto outer = [&](double a) {
      auto inner = [&](double b) {
        Point y(2);
        y << a, b;
        return g(y);
      };
      return quad::integrate_line(inner, s.lo, s.hi, {}, quad).value;
    };
    e = quad::integrate_line(outer, s.lo, s.hi, breaks, quad);
  } else {
    const double side = s.hi - s.lo;
    Estimate m = quad::rqmc_mean(
        n,
        [&](std::span<const double> u) {
          Point y(n);
          for (int i = 0; i < n; ++i) y(i) = s.lo + side * u[i];
          return g(y);
        },
        quad.seed);
    const double vol = std::pow(side, n);
    e = {vol * m.value, vol * m.error};
  }
  quad::require_converged(e, quad, "operator integral");
  return e;
}

std::optional<double> rho_bound(const OperatorSpec& spec, const std::vector<Point>& sample) {
  if (sample.empty()) throw InvalidArgument("rho_bound needs a nonempty sample");
  double best = 0.0;
  for (const auto& fam : spec.families) {
    if (fam.kind() != MatrixFamily::Kind::GeneralTable) {
      for (const auto& y : sample)
        if ((*fam.radial_scale())(y) == 0.0) throw SingularMatrix("family is singular at a sample point");
      best = std::max(best, static_cast<double>(spec.n));
      continue;
    }
    for (const auto& y : sample) {
      const double c = condition_product(fam(y));
      if (!std::isfinite(c)) return std::nullopt;
      best = std::max(best, c);
    }
  }
  return best;
}

std::optional<Monomial> slice_monomial(const PowerExpr& e, const Slice& sl) {
  const bool same = sl.n == 1 && sl.t_lo >= 0.0;
  if (sl.var == Var::Radius && e.first_exp != 0.0 && !same) return std::nullopt;
  if (sl.var == Var::First && e.radial_exp != 0.0 && !same) return std::nullopt;
  return Monomial{e.coef, e.radial_exp + e.first_exp};
}

namespace {

// A bound t = kappa * r^nu held as log kappa; -inf and +inf stand for 0 and inf.
struct Bound {
  double lk;
  double nu;
  double at(double log_r) const { return std::isinf(lk) ? lk : lk + nu * log_r; }
};

double log_or_inf(double v) { return v == 0.0 ? -kInf : std::log(v); }

}  // namespace

std::optional<TestFunction> symbolic_image(const OperatorSpec& spec,
                                           const std::vector<TestFunction>& fs) {
  spec.validate();
  if (static_cast<int>(fs.size()) != spec.m) throw InvalidArgument("need one function per family");
  if (!spec.kernel.is_closed()) return std::nullopt;
  for (const auto& f : fs)
    if (!f.is_symbolic()) return std::nullopt;
  auto sl = slice_for(spec, spec.var());
  if (!sl || sl->t_lo < 0.0) return std::nullopt;
  auto dens = slice_monomial(*spec.kernel.density_expr(spec.n), *sl);
  if (!dens) return std::nullopt;
  std::vector<Monomial> scales;
  for (const auto& fam : spec.families) {
    auto sc = fam.radial_scale();
    if (!sc || !sc->power()) return std::nullopt;
    auto mono = slice_monomial(*sc->power(), *sl);
    if (!mono) return std::nullopt;
    mono->coef = std::abs(mono->coef);
    scales.push_back(*mono);
  }
  std::vector<std::vector<PowerTerm>> terms;
  for (const auto& f : fs) terms.push_back(f.terms());

  const double K0 = sl->measure_coef * dens->coef;
  const double E0 = sl->measure_exp + dens->exponent;
  std::vector<PowerTerm> out;
  std::vector<std::size_t> idx(spec.m, 0);
  for (;;) {
    double C = K0, A = 0.0, E = E0, rlo = 0.0, rhi = kInf;
    std::vector<Bound> lower{{log_or_inf(sl->t_lo), 0.0}}, upper{{log_or_inf(sl->t_hi), 0.0}};
    bool empty = false;
    for (int i = 0; i < spec.m; ++i) {
      const PowerTerm& t = terms[i][idx[i]];
      const double c = scales[i].coef, mu = scales[i].exponent;
      C *= t.coef * std::pow(c, t.exponent);
      A += t.exponent;
      E += mu * t.exponent;
      if (mu == 0.0) {
        rlo = std::max(rlo, t.r0 / c);
        rhi = std::min(rhi, t.r1 / c);
        continue;
      }
      const double nu = -1.0 / mu;
      const double k0 = t.r0 == 0.0 ? (mu > 0 ? -kInf : kInf) : std::log(t.r0 / c) / mu;
      const double k1 = std::isinf(t.r1) ? (mu > 0 ? kInf : -kInf) : std::log(t.r1 / c) / mu;
      if (mu > 0) {
        lower.push_back({k0, nu});
        upper.push_back({k1, nu});
      } else {
        upper.push_back({k0, nu});
        lower.push_back({k1, nu});
      }
    }
    if (C == 0.0 || !(rhi > rlo)) empty = true;
    if (!empty) {
      std::set<double> cuts{rlo, rhi};
      auto add_cross = [&](const Bound& a, const Bound& b) {
        if (a.nu == b.nu) return;
        if (std::isinf(a.lk) || std::isinf(b.lk)) return;
        const double r = std::exp((b.lk - a.lk) / (a.nu - b.nu));
        if (r > rlo && r < rhi) cuts.insert(r);
      };
      std::vector<Bound> all = lower;
      all.insert(all.end(), upper.begin(), upper.end());
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) add_cross(all[i], all[j]);
      std::vector<double> rs(cuts.begin(), cuts.end());
      for (std::size_t p = 0; p + 1 < rs.size(); ++p) {
        const double ra = rs[p], rb = rs[p + 1];
        double rm;
        if (ra == 0.0 && std::isinf(rb)) rm = 1.0;
        else if (ra == 0.0) rm = 0.5 * rb;
        else if (std::isinf(rb)) rm = 2.0 * ra;
        else rm = std::sqrt(ra * rb);
        const double lr = std::log(rm);
        const Bound* lo = &lower.front();
        for (const auto& b : lower)
          if (b.at(lr) > lo->at(lr)) lo = &b;
        const Bound* hi = &upper.front();
        for (const auto& b : upper)
          if (b.at(lr) < hi->at(lr)) hi = &b;
        if (!(hi->at(lr) > lo->at(lr))) continue;
        const double P = E + 1.0;
        if (std::abs(P) < 1e-13) return std::nullopt;
        auto push = [&](const Bound& b, double sign) {
          const double coef = sign * C / P * std::exp(P * b.lk);
          if (!std::isfinite(coef) || coef == 0.0) return false;
          out.push_back({coef, A + b.nu * P, ra, rb});
          return true;
        };
        if (hi->lk == kInf) {
          if (P >= 0.0) throw DivergentError("DivergentIntegral: kernel integral diverges at infinity");
        } else if (!push(*hi, 1.0)) {
          return std::nullopt;
        }
        if (lo->lk == -kInf) {
          if (P <= 0.0) throw DivergentError("DivergentIntegral: kernel integral diverges at 0");
        } else if (!push(*lo, -1.0)) {
          return std::nullopt;
        }
      }
    }
    int i = 0;
    for (; i < spec.m; ++i) {
      if (++idx[i] < terms[i].size()) break;
      idx[i] = 0;
    }
    if (i == spec.m) break;
  }
  return TestFunction::from_terms(out);
}

Estimate apply_operator_estimate(const OperatorSpec& spec, const std::vector<TestFunction>& fs,
                                 const Point& x, const QuadratureSpec& quad) {
  spec.validate();
  if (static_cast<int>(fs.size()) != spec.m) throw InvalidArgument("need one function per family");
  if (x.size() != spec.n) throw InvalidArgument("point dimension differs from n");
  if (auto img = symbolic_image(spec, fs)) return {img->radial(x.norm()), 0.0};
  const Var v = spec.var();
  std::vector<double> breaks;
  auto sl = slice_for(spec, v);
  if (sl) {
    const double r = x.norm();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& fam = spec.families[i];
      for (double b : fam.breakpoints()) breaks.push_back(b);
      auto sc = fam.radial_scale();
      if (!sc || !sc->power() || !fs[i].is_symbolic() || r == 0.0) continue;
      auto mono = slice_monomial(*sc->power(), *sl);
      if (!mono || mono->exponent == 0.0) continue;
      for (double b : RadialProfile(fs[i]).breakpoints())
        breaks.push_back(std::pow(b / (std::abs(mono->coef) * r), 1.0 / mono->exponent));
    }
  }
  auto g = [&](const Point& y) {
    double d = spec.kernel.density(y);
    if (d == 0.0) return 0.0;
    for (int i = 0; i < spec.m && d != 0.0; ++i) d *= fs[i](spec.families[i](y) * x);
    return d;
  };
  Estimate e = integrate_support(spec, v, g, breaks, quad);
  if (!std::isfinite(e.value)) throw DivergentError("DivergentIntegral: operator integral diverges");
  return e;
}

double apply_operator(const OperatorSpec& spec, const std::vector<TestFunction>& fs, const Point& x,
                      const QuadratureSpec& quad) {
  return apply_operator_estimate(spec, fs, x, quad).value;
}

double apply_hardy_1d(const TestFunction& f, double x, const QuadratureSpec& quad) {
  if (!(x > 0.0)) throw InvalidArgument("Hardy operator needs x > 0");
  if (f.is_symbolic()) {
    double total = 0.0;
    for (const auto& t : f.terms()) {
      const double lo = t.r0, hi = std::min(t.r1, x);
      if (!(hi > lo) || t.coef == 0.0) continue;
      const double v = power_integral(t.exponent + 1.0, lo, hi);
      if (std::isinf(v)) throw DivergentError("DivergentIntegral: f not integrable near 0");
      total += t.coef * v;
    }
    return total / x;
  }
  Estimate e = quad::integrate_log([&](double t) { return f(Point::Constant(1, t)); }, 0.0, x, quad);
  if (!std::isfinite(e.value)) throw DivergentError("DivergentIntegral: f not integrable near 0");
  quad::require_converged(e, quad, "Hardy integral");
  return e.value / x;
}

}  // namespace hausdorff
