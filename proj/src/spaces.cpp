#include "hausdorff/spaces.hpp"

#include "hausdorff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hausdorff {

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Lebesgue: return "lebesgue";
    case SpaceKind::CentralMorrey: return "central_morrey";
    case SpaceKind::Herz: return "herz";
    case SpaceKind::MorreyHerz: return "morrey_herz";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "lebesgue") return SpaceKind::Lebesgue;
  if (s == "central_morrey" || s == "morrey") return SpaceKind::CentralMorrey;
  if (s == "herz") return SpaceKind::Herz;
  if (s == "morrey_herz") return SpaceKind::MorreyHerz;
  throw InvalidArgument("unknown space kind '" + s + "'");
}

void SpaceSpec::validate() const {
  if (v.dimension() != omega.dimension()) throw InvalidArgument("weights v and omega differ in dimension");
  if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidArgument("q must satisfy q >= 1");
  if (kind == SpaceKind::CentralMorrey && !(1.0 + lambda * q > 0.0))
    throw InvalidArgument("central Morrey space needs 1 + lambda q > 0");
  if (kind == SpaceKind::Herz || kind == SpaceKind::MorreyHerz) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidArgument("p must be positive");
  }
  if (kind == SpaceKind::MorreyHerz && !(lambda >= 0.0))
    throw InvalidArgument("Morrey-Herz space needs lambda >= 0");
}

DyadicRange DyadicRange::standard() { return with_bounds(-40, 40); }

DyadicRange DyadicRange::with_bounds(int k_min, int k_max) {
  DyadicRange r;
  r.k_min = k_min;
  r.k_max = k_max;
  for (int k = -30; k <= 30; ++k) {
    r.R_grid.push_back(dyadic(k));
    r.k0_grid.push_back(k);
  }
  return r;
}

void DyadicRange::validate() const {
  if (!(k_min < k_max)) throw InvalidArgument("dyadic range needs k_min < k_max");
  if (R_grid.empty() || k0_grid.empty()) throw InvalidArgument("dyadic grids must be nonempty");
  for (double R : R_grid)
    if (!(R > 0.0)) throw InvalidArgument("R_grid entries must be positive");
}

namespace {

constexpr double kRatioLimit = 0.999;
constexpr double kFlatTol = 1e-10;
constexpr double kNegligible = 1e-17;

bool symbolic_path(const SpaceSpec& s, const TestFunction& f) {
  return f.is_symbolic() && s.omega.is_power() && s.v.is_power();
}

double log_vball(const SpaceSpec& s, double R, const QuadratureSpec& quad) {
  const int n = s.dimension();
  if (s.v.is_power()) {
    const double b = s.v.exponent();
    if (b <= -n) throw DivergentError("DivergentMass: v(B) infinite for exponent <= -n");
    return std::log(sphere_area(n)) - std::log(n + b) + (n + b) * std::log(R);
  }
  return std::log(ball_mass(s.v, Point::Zero(n), R, quad));
}

double log_vball_k(const SpaceSpec& s, int k, const QuadratureSpec& quad) {
  const int n = s.dimension();
  if (s.v.is_power()) {
    const double b = s.v.exponent();
    if (b <= -n) throw DivergentError("DivergentMass: v(B) infinite for exponent <= -n");
    return std::log(sphere_area(n)) - std::log(n + b) + (n + b) * k * std::log(2.0);
  }
  return log_vball(s, dyadic(k), quad);
}

Point on_axis(int n, double r) {
  Point x = Point::Zero(n);
  x(0) = r;
  return x;
}

// Integral of |f|^q omega over lo < |x| <= hi by quadrature (n = 1) or
// randomized QMC per octave (n >= 2).
Estimate numeric_annulus(const TestFunction& f, const Weight& w, double q, double lo, double hi,
                         const QuadratureSpec& quad) {
  const int n = w.dimension();
  Estimate out;
  if (!(hi > lo)) return out;
  std::vector<double> cuts{lo};
  for (double t = std::exp2(std::floor(std::log2(lo)) + 1.0); t < hi; t *= 2.0)
    if (t > lo) cuts.push_back(t);
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (n == 1) {
      auto g = [&](double r) {
        Point xp = on_axis(1, r), xm = on_axis(1, -r);
        return std::pow(std::abs(f(xp)), q) * w(xp) + std::pow(std::abs(f(xm)), q) * w(xm);
      };
      Estimate e = quad::integrate_log(g, a, b, quad);
      quad::require_converged(e, quad, "shell integral");
      out.value += e.value;
      out.error += e.error;
    } else if (f.is_radial() && w.is_radial()) {
      const double area = sphere_area(n);
      auto g = [&](double r) {
        Point x = on_axis(n, r);
        return area * std::pow(std::abs(f(x)), q) * w(x) * std::pow(r, n - 1);
      };
      Estimate e = quad::integrate_log(g, a, b, quad);
      quad::require_converged(e, quad, "shell integral");
      out.value += e.value;
      out.error += e.error;
    } else {
      const double L = std::log(b / a), area = sphere_area(n);
      Estimate e = quad::rqmc_mean(
          1 + quad::direction_dims(n),
          [&](std::span<const double> u) {
            const double r = a * std::exp(u[0] * L);
            Point x = r * quad::unit_vector(n, u.subspan(1));
            return std::pow(std::abs(f(x)), q) * w(x) * std::pow(r, n) * L;
          },
          quad.seed + static_cast<std::uint64_t>(i));
      out.value += area * e.value;
      out.error += area * e.error;
    }
  }
  return out;
}

// Integral of |f|^q omega over lo < |x| <= hi, exact when possible.
Estimate annulus_lq(const TestFunction& f, const Weight& w, double q, double lo, double hi,
                    const QuadratureSpec& quad, bool* exact) {
  if (f.is_symbolic() && w.is_power()) {
    RadialProfile prof(f);
    return prof.lq_integral(q, w.exponent(), w.dimension(), lo, hi, quad, exact);
  }
  if (exact) *exact = false;
  return numeric_annulus(f, w, q, lo, hi, quad);
}

void add_q1_warning(const SpaceSpec& s, NormResult& r) {
  if ((s.kind == SpaceKind::Herz || s.kind == SpaceKind::MorreyHerz) && s.q == 1.0)
    r.warnings.push_back("q = 1 lies outside the range 1 < q < inf assumed for Herz spaces");
}

NormResult divergent_result(const std::string& why) {
  NormResult r;
  r.value = kInf;
  r.divergent = true;
  r.exact = true;
  r.warnings.push_back(why);
  return r;
}

// Shell terms T_k = v(B_k)^(alpha p / n) ||f chi_k||^p with geometric tails.
struct HerzSeries {
  int k_lo = 0, k_hi = 0;
  std::vector<double> T;  // k_lo .. k_hi
  std::vector<double> T_err;
  bool lower_zero = true, upper_zero = true;
  double rho_lo = 0.0, rho_hi = 0.0;  // T_{k-1}/T_k below, T_{k+1}/T_k above
  bool truncated = false;
  bool exact = true;
  double term(int k) const { return T[static_cast<std::size_t>(k - k_lo)]; }
  double lower_sum() const {
    if (lower_zero) return 0.0;
    return term(k_lo) * rho_lo / (1.0 - rho_lo);
  }
};

double growth(const SpaceSpec& s, double exponent) {
  const int n = s.dimension();
  const double beta = s.v.exponent(), gamma = s.omega.exponent();
  return s.alpha * s.p * (n + beta) / n + s.p * (exponent * s.q + gamma + n) / s.q;
}

const Monomial& lead(const std::vector<Monomial>& m, bool at_zero) {
  const Monomial* best = &m.front();
  for (const auto& t : m)
    if (at_zero ? t.exponent < best->exponent : t.exponent > best->exponent) best = &t;
  return *best;
}

// Shell index beyond which every non-leading monomial is negligible.
double decay_index(const std::vector<Monomial>& m, bool at_zero) {
  const Monomial& l = lead(m, at_zero);
  double k = at_zero ? kInf : -kInf;
  for (const auto& t : m) {
    if (&t == &l) continue;
    const double target = std::log2(kNegligible) - std::log2(std::abs(t.coef / l.coef));
    const double kk = target / (t.exponent - l.exponent);
    k = at_zero ? std::min(k, std::floor(kk)) : std::max(k, std::ceil(kk));
  }
  return k;
}

HerzSeries herz_series(const SpaceSpec& s, const RadialProfile& prof, const DyadicRange& range,
                       const QuadratureSpec& quad) {
  HerzSeries h;
  const int n = s.dimension();
  int k_lo = range.k_min, k_hi = range.k_max;
  for (double b : prof.breakpoints()) {
    if (!std::isfinite(b)) continue;
    k_lo = std::min(k_lo, static_cast<int>(std::floor(std::log2(b))) + 1);
    k_hi = std::max(k_hi, static_cast<int>(std::ceil(std::log2(b))));
  }
  double gmax = std::abs(n + s.v.exponent()) + 1.0;
  for (const auto& p : prof.pieces())
    for (const auto& t : p.terms) {
      gmax = std::max(gmax, std::abs(growth(s, t.exponent)));
      gmax = std::max(gmax, std::abs(t.exponent * s.q + s.omega.exponent() + n));
    }
  const int kcap = static_cast<int>(std::clamp(700.0 / (gmax * std::log(2.0)), 60.0, 20000.0));
  const auto& m0 = prof.near_zero();
  const auto& m1 = prof.near_infinity();
  if (m0.size() > 1) {
    const double k = decay_index(m0, true);
    if (k < -kcap) {
      h.truncated = true;
      k_lo = std::min(k_lo, -kcap);
    } else {
      k_lo = std::min(k_lo, static_cast<int>(k));
    }
  }
  if (m1.size() > 1) {
    const double k = decay_index(m1, false);
    if (k > kcap) {
      h.truncated = true;
      k_hi = std::max(k_hi, kcap);
    } else {
      k_hi = std::max(k_hi, static_cast<int>(k));
    }
  }
  h.k_lo = k_lo;
  h.k_hi = k_hi;
  const double ap_n = s.alpha * s.p / n;
  for (int k = k_lo; k <= k_hi; ++k) {
    bool ex = true;
    Estimate L = prof.lq_integral(s.q, s.omega.exponent(), n, dyadic(k - 1), dyadic(k), quad, &ex);
    h.exact = h.exact && ex;
    double t = 0.0, te = 0.0;
    if (L.value > 0.0) {
      t = std::exp(ap_n * log_vball_k(s, k, quad) + (s.p / s.q) * std::log(L.value));
      te = t * (s.p / s.q) * L.error / L.value;
    }
    h.T.push_back(t);
    h.T_err.push_back(te);
  }
  if (!m0.empty()) {
    h.lower_zero = false;
    h.rho_lo = std::exp2(-growth(s, lead(m0, true).exponent));
  }
  if (!m1.empty()) {
    h.upper_zero = false;
    h.rho_hi = std::exp2(growth(s, lead(m1, false).exponent));
  }
  return h;
}

NormResult herz_symbolic(const SpaceSpec& s, const TestFunction& f, const DyadicRange& range,
                         const QuadratureSpec& quad) {
  RadialProfile prof(f);
  if (prof.is_zero()) return {};
  HerzSeries h = herz_series(s, prof, range, quad);
  if (!h.lower_zero && h.rho_lo >= kRatioLimit)
    return divergent_result("shell terms do not decay toward 0");
  if (!h.upper_zero && h.rho_hi >= kRatioLimit)
    return divergent_result("shell terms do not decay toward infinity");
  double total = h.lower_sum(), err = 0.0;
  for (std::size_t i = 0; i < h.T.size(); ++i) {
    total += h.T[i];
    err += h.T_err[i];
  }
  if (!h.upper_zero) total += h.term(h.k_hi) * h.rho_hi / (1.0 - h.rho_hi);
  NormResult r;
  r.value = std::pow(total, 1.0 / s.p);
  r.error = total > 0.0 ? r.value * err / (s.p * total) : 0.0;
  r.truncated = h.truncated;
  r.exact = h.exact;
  if (h.truncated) r.warnings.push_back("tail extension capped; geometric tail approximated");
  return r;
}

NormResult morrey_herz_symbolic(const SpaceSpec& s, const TestFunction& f,
                                const DyadicRange& range, const QuadratureSpec& quad) {
  RadialProfile prof(f);
  if (prof.is_zero()) return {};
  const int n = s.dimension();
  HerzSeries h = herz_series(s, prof, range, quad);
  if (!h.lower_zero && h.rho_lo >= kRatioLimit)
    return divergent_result("shell terms do not decay toward 0");
  const double lam = s.lambda * s.p / n;
  const double w = std::exp2(-s.lambda * s.p * (n + s.v.exponent()) / n);
  auto vfac = [&](int k0) { return std::exp(-lam * log_vball_k(s, k0, quad)); };
  std::vector<double> prefix(h.T.size());
  double acc = h.lower_sum();
  for (std::size_t i = 0; i < h.T.size(); ++i) prefix[i] = (acc += h.T[i]);
  const double s_hi = prefix.back();
  const double t_hi = h.term(h.k_hi);
  auto geometric = [](double rho, int j) {
    return rho == 1.0 ? static_cast<double>(j) : rho * (std::pow(rho, j) - 1.0) / (rho - 1.0);
  };
  auto partial = [&](int k0) {
    if (k0 < h.k_lo) {
      if (h.lower_zero) return 0.0;
      return h.term(h.k_lo) * std::pow(h.rho_lo, h.k_lo - k0) / (1.0 - h.rho_lo);
    }
    if (k0 <= h.k_hi) return prefix[static_cast<std::size_t>(k0 - h.k_lo)];
    return s_hi + (h.upper_zero ? 0.0 : t_hi * geometric(h.rho_hi, k0 - h.k_hi));
  };
  auto Q = [&](int k0) { return vfac(k0) * partial(k0); };

  double best = 0.0;
  std::set<int> ks(range.k0_grid.begin(), range.k0_grid.end());
  for (int k = h.k_lo - 1; k <= h.k_hi; ++k) ks.insert(k);
  for (int k : ks) best = std::max(best, Q(k));

  if (!h.lower_zero) {
    const double rq = h.rho_lo / w;
    if (rq > 1.0 + kFlatTol) return divergent_result("Morrey-Herz quotient grows as k0 -> -inf");
  }
  if (!h.upper_zero) {
    const double rho = h.rho_hi;
    if (w >= 1.0 - kFlatTol) {
      if (rho >= kRatioLimit) return divergent_result("shell terms do not decay toward infinity");
      best = std::max(best, vfac(h.k_hi) * (s_hi + t_hi * rho / (1.0 - rho)));
    } else {
      const double ru = rho * w;
      if (ru > 1.0 + kFlatTol) return divergent_result("Morrey-Herz quotient grows as k0 -> inf");
      // Q(k_hi + j) = V (A w^j + B ru^j) is unimodal in j.
      const double V = vfac(h.k_hi);
      const double B = rho == 1.0 ? 0.0 : t_hi * rho / (rho - 1.0);
      const double A = s_hi - B;
      auto Qj = [&](int j) {
        if (rho == 1.0) return V * std::pow(w, j) * (s_hi + t_hi * j);
        return V * (A * std::pow(w, j) + B * std::pow(ru, j));
      };
      if (std::abs(ru - 1.0) <= kFlatTol && rho > 1.0) best = std::max(best, V * B);
      double prev = Qj(0);
      for (int j = 1; j <= 100000; ++j) {
        const double cur = Qj(j);
        best = std::max(best, cur);
        if (cur < prev) break;
        prev = cur;
      }
    }
  }
  double err = 0.0;
  for (double e : h.T_err) err += e;
  NormResult r;
  r.value = std::pow(best, 1.0 / s.p);
  double total = s_hi;
  r.error = total > 0.0 ? r.value * err / (s.p * total) : 0.0;
  r.truncated = h.truncated;
  r.exact = h.exact;
  return r;
}

NormResult morrey_symbolic(const SpaceSpec& s, const TestFunction& f, const DyadicRange& range,
                           const QuadratureSpec& quad) {
  RadialProfile prof(f);
  if (prof.is_zero()) return {};
  const int n = s.dimension();
  const double beta = s.v.exponent(), gamma = s.omega.exponent();
  if (beta <= -n) throw DivergentError("DivergentMass: v(B) infinite for exponent <= -n");
  const double vexp = s.lambda + 1.0 / s.q;
  auto limit_value = [&](const Monomial& m) {
    const double sx = m.exponent * s.q + gamma + n;
    const double num = std::pow(std::abs(m.coef), s.q) * sphere_area(n) / sx;
    return std::pow(num, 1.0 / s.q) / std::pow(sphere_area(n) / (n + beta), vexp);
  };
  double best = 0.0;
  const auto& m0 = prof.near_zero();
  if (!m0.empty()) {
    const Monomial& l = lead(m0, true);
    const double sx = l.exponent * s.q + gamma + n;
    if (sx <= 0.0) return divergent_result("f not locally q-integrable at 0");
    const double slope = sx / s.q - (n + beta) * vexp;
    if (slope < -kFlatTol) return divergent_result("Morrey quotient grows as R -> 0");
    if (std::abs(slope) <= kFlatTol) best = std::max(best, limit_value(l));
  }
  const auto& m1 = prof.near_infinity();
  if (!m1.empty()) {
    const Monomial& l = lead(m1, false);
    const double sx = l.exponent * s.q + gamma + n;
    if (sx > 0.0) {
      const double slope = sx / s.q - (n + beta) * vexp;
      if (slope > kFlatTol) return divergent_result("Morrey quotient grows as R -> inf");
      if (std::abs(slope) <= kFlatTol) best = std::max(best, limit_value(l));
    }
  }
  std::vector<double> radii = range.R_grid;
  for (double b : prof.breakpoints())
    if (std::isfinite(b)) radii.push_back(b);
  std::sort(radii.begin(), radii.end());
  double F = 0.0, prev = 0.0, err = 0.0;
  bool exact = true;
  for (double R : radii) {
    bool ex = true;
    Estimate e = prof.lq_integral(s.q, gamma, n, prev, R, quad, &ex);
    exact = exact && ex;
    F += e.value;
    err += e.error;
    prev = R;
    const double q = std::exp(std::log(F) / s.q - vexp * log_vball(s, R, quad));
    if (F > 0.0) best = std::max(best, q);
  }
  NormResult r;
  r.value = best;
  r.exact = exact;
  r.error = F > 0.0 ? best * err / (s.q * F) : 0.0;
  return r;
}

NormResult lebesgue_symbolic(const SpaceSpec& s, const TestFunction& f, const QuadratureSpec& quad) {
  RadialProfile prof(f);
  bool ex = true;
  Estimate e = prof.lq_integral(s.q, s.omega.exponent(), s.dimension(), 0.0, kInf, quad, &ex);
  NormResult r;
  r.value = std::pow(e.value, 1.0 / s.q);
  r.error = e.value > 0.0 ? r.value * e.error / (s.q * e.value) : 0.0;
  r.exact = ex;
  return r;
}

NormResult numeric_norm(const SpaceSpec& s, const TestFunction& f, const DyadicRange& range,
                        const QuadratureSpec& quad) {
  NormResult r;
  r.truncated = true;
  r.exact = false;
  r.warnings.push_back("no symbolic tail test; sum truncated to the dyadic range");
  const int n = s.dimension();
  std::vector<double> L, Le;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    Estimate e = annulus_lq(f, s.omega, s.q, dyadic(k - 1), dyadic(k), quad, nullptr);
    L.push_back(e.value);
    Le.push_back(e.error);
  }
  auto idx = [&](int k) { return static_cast<std::size_t>(k - range.k_min); };
  switch (s.kind) {
    case SpaceKind::Lebesgue: {
      double t = 0.0, e = 0.0;
      for (std::size_t i = 0; i < L.size(); ++i) {
        t += L[i];
        e += Le[i];
      }
      r.value = std::pow(t, 1.0 / s.q);
      r.error = t > 0.0 ? r.value * e / (s.q * t) : 0.0;
      return r;
    }
    case SpaceKind::Herz:
    case SpaceKind::MorreyHerz: {
      std::vector<double> T(L.size());
      double err = 0.0;
      for (int k = range.k_min; k <= range.k_max; ++k) {
        const double l = L[idx(k)];
        const double t =
            l > 0.0 ? std::exp(s.alpha * s.p / n * log_vball_k(s, k, quad) + s.p / s.q * std::log(l)) : 0.0;
        T[idx(k)] = t;
        if (l > 0.0) err += t * (s.p / s.q) * Le[idx(k)] / l;
      }
      double best = 0.0, acc = 0.0;
      if (s.kind == SpaceKind::Herz) {
        for (double t : T) acc += t;
        best = acc;
      } else {
        std::vector<double> prefix(T.size());
        for (std::size_t i = 0; i < T.size(); ++i) prefix[i] = (acc += T[i]);
        for (int k0 : range.k0_grid) {
          if (k0 < range.k_min || k0 > range.k_max) continue;
          best = std::max(best, std::exp(-s.lambda * s.p / n * log_vball_k(s, k0, quad)) * prefix[idx(k0)]);
        }
      }
      r.value = std::pow(best, 1.0 / s.p);
      r.error = best > 0.0 ? r.value * err / (s.p * best) : 0.0;
      return r;
    }
    case SpaceKind::CentralMorrey: {
      std::vector<double> radii = range.R_grid;
      std::sort(radii.begin(), radii.end());
      double F = 0.0, err = 0.0, prev = dyadic(range.k_min), best = 0.0;
      for (double R : radii) {
        if (R > prev) {
          Estimate e = annulus_lq(f, s.omega, s.q, prev, R, quad, nullptr);
          F += e.value;
          err += e.error;
          prev = R;
        }
        if (F > 0.0)
          best = std::max(best, std::exp(std::log(F) / s.q - (s.lambda + 1.0 / s.q) * log_vball(s, R, quad)));
      }
      r.value = best;
      r.error = F > 0.0 ? best * err / (s.q * F) : 0.0;
      return r;
    }
  }
  return r;
}

}  // namespace

double annulus_norm(const TestFunction& f, int k, double q, const Weight& omega,
                    const QuadratureSpec& quad) {
  if (!(q >= 1.0)) throw InvalidArgument("q must satisfy q >= 1");
  Estimate e = annulus_lq(f, omega, q, dyadic(k - 1), dyadic(k), quad, nullptr);
  return std::pow(e.value, 1.0 / q);
}

NormResult space_norm(const SpaceSpec& spec, const TestFunction& f, const DyadicRange& range,
                      const QuadratureSpec& quad) {
  spec.validate();
  range.validate();
  NormResult r;
  try {
    if (!symbolic_path(spec, f)) {
      r = numeric_norm(spec, f, range, quad);
    } else {
      switch (spec.kind) {
        case SpaceKind::Lebesgue: r = lebesgue_symbolic(spec, f, quad); break;
        case SpaceKind::CentralMorrey: r = morrey_symbolic(spec, f, range, quad); break;
        case SpaceKind::Herz: r = herz_symbolic(spec, f, range, quad); break;
        case SpaceKind::MorreyHerz: r = morrey_herz_symbolic(spec, f, range, quad); break;
      }
    }
  } catch (const DivergentError& e) {
    r = divergent_result(e.what());
  }
  add_q1_warning(spec, r);
  return r;
}

}  // namespace hausdorff
