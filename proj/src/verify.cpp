#include "hausdorff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hausdorff {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "ExactMatch";
    case Verdict::LowerBoundOk: return "LowerBoundOk";
    case Verdict::UpperBoundOk: return "UpperBoundOk";
    case Verdict::Violation: return "Violation";
  }
  return "?";
}

namespace {

SpaceSpec make_space(SpaceFamily fam, int n, double beta, double gamma, double alpha, double lambda,
                     double p, double q) {
  SpaceSpec s;
  switch (fam) {
    case SpaceFamily::Morrey: s.kind = SpaceKind::CentralMorrey; break;
    case SpaceFamily::Herz: s.kind = SpaceKind::Herz; break;
    case SpaceFamily::MorreyHerz: s.kind = SpaceKind::MorreyHerz; break;
  }
  s.q = q;
  s.p = p;
  s.alpha = fam == SpaceFamily::Morrey ? 0.0 : alpha;
  s.lambda = fam == SpaceFamily::Herz ? 0.0 : lambda;
  s.v = Weight::power(beta, n);
  s.omega = Weight::power(gamma, n);
  return s;
}

void require_power_weights(const TheoremParams& params) {
  if (is_muckenhoupt(params.theorem))
    throw InvalidArgument(std::string("no ratio harness for ") + to_string(params.theorem) +
                          ": its constants are sufficient conditions only");
}

}  // namespace

SpaceSpec source_space(const TheoremParams& params, int i) {
  require_power_weights(params);
  const auto& e = params.index.at(i);
  return make_space(space_family(params.theorem), params.n, e.beta, e.gamma, e.alpha, e.lambda, e.p, e.q);
}

SpaceSpec target_space(const TheoremParams& params) {
  require_power_weights(params);
  const auto& t = params.target;
  return make_space(space_family(params.theorem), params.n, t.beta, t.gamma, t.alpha, t.lambda, t.p, t.q);
}

std::vector<TestFunction> build_extremal(const TheoremParams& params, double eps) {
  require_power_weights(params);
  require_hypotheses(params);
  const double n = params.n;
  std::vector<TestFunction> out;
  const SpaceFamily fam = space_family(params.theorem);
  if (fam == SpaceFamily::Herz && !(eps > 0.0))
    throw HypothesisViolation("Herz extremals form a family in eps > 0; got eps = " + std::to_string(eps));
  double cutoff = 0.0;
  if (fam == SpaceFamily::Herz) {
    auto rho = rho_bound(params.op, family_sample(params.n));
    if (!rho) throw HypothesisViolation("rho_A is unbounded");
    cutoff = 1.0 / *rho;
  }
  for (const auto& e : params.index) {
    switch (fam) {
      case SpaceFamily::Morrey:
        out.push_back(TestFunction::power((e.beta + n) * e.lambda + (e.beta - e.gamma) / e.q));
        break;
      case SpaceFamily::Herz:
        out.push_back(TestFunction::power(-(1.0 + e.beta / n) * e.alpha - (n + e.gamma) / e.q - eps, cutoff));
        break;
      case SpaceFamily::MorreyHerz:
        out.push_back(TestFunction::power((e.lambda - e.alpha) * (1.0 + e.beta / n) - (n + e.gamma) / e.q));
        break;
    }
  }
  return out;
}

TestFunction operator_image(const OperatorSpec& spec, const std::vector<TestFunction>& fs,
                            const QuadratureSpec& quad) {
  if (auto img = symbolic_image(spec, fs)) return *img;
  bool radial = true;
  for (const auto& f : fs) radial = radial && f.is_radial();
  for (const auto& fam : spec.families) radial = radial && fam.kind() != MatrixFamily::Kind::GeneralTable;
  return TestFunction::opaque([spec, fs, quad](const Point& x) { return apply_operator(spec, fs, x, quad); },
                              radial);
}

namespace {

RatioReport classify(RatioReport r) {
  if (std::isinf(r.constant)) {
    r.vacuous = true;
    r.verdict = Verdict::UpperBoundOk;
    r.relative_gap = -1.0;
    return r;
  }
  r.relative_gap = r.constant > 0.0 ? (r.ratio - r.constant) / r.constant : kInf;
  if (std::abs(r.relative_gap) <= kExactTol) r.verdict = Verdict::ExactMatch;
  else if (r.ratio <= r.constant * (1.0 + kUpperTol)) r.verdict = Verdict::UpperBoundOk;
  else r.verdict = Verdict::Violation;
  return r;
}

}  // namespace

RatioReport empirical_ratio(const TheoremParams& params, const std::vector<TestFunction>& fs,
                            const DyadicRange& range, const QuadratureSpec& quad) {
  require_power_weights(params);
  if (static_cast<int>(fs.size()) != params.m) throw InvalidArgument("need one function per input");
  const ConstantResult c = compute_constant(params, quad);
  RatioReport r;
  r.constant = c.value;
  r.constant_id = c.id;
  r.exact = true;
  double den = 1.0, rel_err = 0.0;
  for (int i = 0; i < params.m; ++i) {
    if (fs[i].is_zero()) throw ZeroDenominator("input " + std::to_string(i) + " is the zero function");
    NormResult nr = space_norm(source_space(params, i), fs[i], range, quad);
    if (nr.divergent) throw InvalidArgument("input " + std::to_string(i) + " is not in its source space");
    if (nr.value == 0.0) throw ZeroDenominator("input " + std::to_string(i) + " has zero norm");
    den *= nr.value;
    rel_err += nr.error / nr.value;
    r.exact = r.exact && nr.exact;
  }
  TestFunction image;
  try {
    image = operator_image(params.op, fs, quad);
  } catch (const DivergentError& e) {
    throw DivergentNumerator(std::string("operator image diverges: ") + e.what());
  }
  NormResult num = space_norm(target_space(params), image, range, quad);
  if (num.divergent) throw DivergentNumerator("operator image has infinite target norm");
  r.exact = r.exact && num.exact;
  if (num.value != 0.0) rel_err += num.error / num.value;
  r.ratio = num.value / den;
  r.quadrature_error = r.ratio * rel_err;
  if (num.truncated) r.diagnostics = "target norm truncated to the dyadic range";
  return classify(r);
}

std::vector<double> default_eps_list() { return {0.2, 0.1, 0.05, 0.02, 0.01}; }

SweepResult sharpness_sweep(const TheoremParams& params, const std::vector<double>& eps_list,
                            const DyadicRange& range, const QuadratureSpec& quad) {
  if (eps_list.empty()) throw InvalidArgument("eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InvalidArgument("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw InvalidArgument("eps list must be descending");
  }
  SweepResult s;
  for (double eps : eps_list) {
    RatioReport r = empirical_ratio(params, build_extremal(params, eps), range, quad);
    r.epsilon = eps;
    if (!s.reports.empty()) {
      const double prev = s.reports.back().ratio;
      if (r.ratio < prev - 1e-9) s.nondecreasing = false;
      if (!(r.ratio > prev)) s.strictly_increasing = false;
    }
    if (!r.vacuous && r.ratio > r.constant * (1.0 + kUpperTol)) s.bounded = false;
    s.reports.push_back(r);
  }
  return s;
}

RatioReport two_sided_check(const TheoremParams& params, double K_upper, const DyadicRange& range,
                            const QuadratureSpec& quad, int cases) {
  require_power_weights(params);
  if (!(K_upper >= 1.0)) throw InvalidArgument("K_upper must be at least 1");
  const ConstantResult c = compute_constant(params, quad);
  RatioReport out;
  out.constant = c.value;
  out.constant_id = c.id;
  if (std::isinf(c.value)) {
    out.diagnostics = "constant is infinite; the upper bound holds vacuously";
    return classify(out);
  }
  const SpaceFamily fam = space_family(params.theorem);
  std::ostringstream diag;
  diag.precision(17);
  if (is_corollary(params.theorem) && fam != SpaceFamily::Herz) {
    try {
      out = empirical_ratio(params, build_extremal(params, 0.0), range, quad);
    } catch (const DivergentNumerator& e) {
      out.verdict = Verdict::Violation;
      out.diagnostics = e.what();
      return out;
    }
    if (out.verdict != Verdict::ExactMatch) {
      diag << "extremal ratio " << out.ratio << " differs from constant " << out.constant;
      out.diagnostics = diag.str();
      out.verdict = Verdict::Violation;
    }
    return out;
  }
  if (is_corollary(params.theorem)) {
    SweepResult s = sharpness_sweep(params, default_eps_list(), range, quad);
    out = s.reports.back();
    const bool limit = out.ratio >= out.constant * (1.0 - kSweepLimitTol);
    diag << "sweep ratios:";
    for (const auto& r : s.reports) diag << ' ' << r.ratio;
    if (!s.nondecreasing) diag << "; not monotone";
    if (!s.bounded) diag << "; exceeds constant";
    if (!limit) diag << "; limit below " << (1.0 - kSweepLimitTol) << " C";
    out.diagnostics = diag.str();
    out.verdict = s.nondecreasing && s.bounded && limit ? Verdict::LowerBoundOk : Verdict::Violation;
    return out;
  }
  bool ok = true;
  out.ratio = 0.0;
  for (int k = 0; k < cases; ++k) {
    const auto fs = random_test_functions(params.m, quad.seed * 1000003ULL + static_cast<std::uint64_t>(k));
    RatioReport r;
    try {
      r = empirical_ratio(params, fs, range, quad);
    } catch (const DivergentNumerator& e) {
      ok = false;
      diag << "case " << k << ": " << e.what() << "; ";
      continue;
    }
    if (r.ratio > K_upper * r.constant * (1.0 + kUpperTol)) {
      ok = false;
      diag << "case " << k << ": ratio " << r.ratio << " > " << K_upper << " C; ";
    }
    if (r.ratio >= out.ratio) {
      const std::string keep = out.diagnostics;
      out = r;
      out.diagnostics = keep;
    }
  }
  out.constant = c.value;
  out.relative_gap = (out.ratio - out.constant) / out.constant;
  out.verdict = ok ? Verdict::UpperBoundOk : Verdict::Violation;
  diag << "worst ratio / C = " << out.ratio / out.constant << " over " << cases << " inputs";
  out.diagnostics = diag.str();
  return out;
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed ^ 0x5DEECE66DULL) {}
  double uniform(double a, double b) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

 private:
  std::mt19937_64 gen_;
};

constexpr double kMargin = 0.05;

}  // namespace

double known_scale_factor(const TheoremParams& params) {
  require_power_weights(params);
  const double n = params.n;
  auto log_norm = [&](double beta, double alpha, double lambda, double q) {
    const double lv = std::log(sphere_area(params.n) / (n + beta));
    switch (space_family(params.theorem)) {
      case SpaceFamily::Morrey: return -(lambda + 1.0 / q) * lv;
      case SpaceFamily::Herz: return alpha / n * lv;
      case SpaceFamily::MorreyHerz: return (alpha - lambda) / n * lv;
    }
    return 0.0;
  };
  const auto& t = params.target;
  double lf = log_norm(t.beta, t.alpha, t.lambda, t.q);
  for (const auto& e : params.index) lf -= log_norm(e.beta, e.alpha, e.lambda, e.q);
  if (!is_corollary(params.theorem)) {
    double b = 0.0;
    for (int i = 0; i < params.m; ++i) b += index_exponent(params, i);
    lf -= 0.5 * b * std::log(n);
  }
  return std::exp(lf);
}

namespace {

TheoremParams draw_params(TheoremId id, int m, int n, FamilyShape shape, Draw& d) {
  TheoremParams p;
  p.theorem = id;
  p.m = m;
  p.n = n;
  const SpaceFamily fam = space_family(id);
  double inv_q = 0.0, inv_p = 0.0, bq = 0.0, gq = 0.0;
  for (int i = 0; i < m; ++i) {
    IndexExponents e;
    e.beta = d.uniform(-n + kMargin, 1.0);
    e.gamma = d.uniform(-n + kMargin, 1.0);
    e.q = d.uniform(m * (1.0 + kMargin), 6.0);
    e.p = d.uniform(m * (1.0 + kMargin), 6.0);
    if (fam == SpaceFamily::Morrey) e.lambda = d.uniform(-1.0 / e.q + kMargin, -kMargin);
    if (fam == SpaceFamily::MorreyHerz) e.lambda = d.uniform(kMargin, 1.0);
    if (fam != SpaceFamily::Morrey) e.alpha = d.uniform(-1.0, 1.0);
    inv_q += 1.0 / e.q;
    inv_p += 1.0 / e.p;
    bq += e.beta / e.q;
    gq += e.gamma / e.q;
    p.index.push_back(e);
  }
  auto& t = p.target;
  t.q = 1.0 / inv_q;
  t.p = 1.0 / inv_p;
  t.gamma = gq * t.q;
  if (fam == SpaceFamily::Morrey) {
    t.beta = bq * t.q;
    double lam = 0.0;
    for (const auto& e : p.index) lam += (n + e.beta) * e.lambda;
    t.lambda = lam / (n + t.beta);
  } else {
    t.beta = d.uniform(-n + kMargin, 1.0);
    double a = 0.0, l = 0.0;
    for (const auto& e : p.index) {
      a += (1.0 + e.beta / n) * e.alpha;
      l += (1.0 + e.beta / n) * e.lambda;
    }
    t.alpha = a / (1.0 + t.beta / n);
    t.lambda = l / (1.0 + t.beta / n);
  }
  const Convention conv = is_hardy_cesaro(id)      ? Convention::HardyCesaroPsi
                          : is_corollary(id)       ? Convention::HybridPhi
                                                   : Convention::HausdorffPhi;
  PowerExpr k;
  k.coef = d.uniform(0.5, 2.0);
  std::vector<MatrixFamily> fams;
  if (conv == Convention::HardyCesaroPsi) {
    k.first_exp = d.uniform(0.0, 2.0);
    for (int i = 0; i < m; ++i) {
      PowerExpr s;
      s.coef = d.uniform(0.5, 2.0);
      s.first_exp = d.uniform(0.25, 1.5);
      fams.push_back(MatrixFamily::diagonal(s));
    }
  } else {
    k.radial_exp = d.uniform(-1.0, 1.0);
    for (int i = 0; i < m; ++i) {
      PowerExpr s;
      s.coef = d.uniform(0.5, 2.0);
      s.radial_exp = d.uniform(0.1, 1.0) * (d.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
      if (shape == FamilyShape::Rotation && !is_corollary(id))
        fams.push_back(MatrixFamily::planar_rotation(d.uniform(0.0, 6.0), d.uniform(-2.0, 2.0), s));
      else
        fams.push_back(MatrixFamily::diagonal(s));
    }
  }
  p.op = OperatorSpec{m, n, KernelSpec::closed(k, Support::annulus(0.25, 4.0), conv), fams};
  return p;
}

}  // namespace

TheoremParams random_admissible_params(TheoremId id, int m, int n, FamilyShape shape,
                                       std::uint64_t seed) {
  if (is_muckenhoupt(id)) throw InvalidArgument("random parameters cover power-weight results only");
  if (m < 1 || n < 1) throw InvalidArgument("need m >= 1 and n >= 1");
  if (shape == FamilyShape::Rotation && n != 2) throw InvalidArgument("rotation families need n = 2");
  Draw d(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    TheoremParams p = draw_params(id, m, n, shape, d);
    if (known_scale_factor(p) <= kScaleBudget) return p;
  }
  throw InvalidArgument("no admissible draw within the scale budget");
}

std::vector<TestFunction> random_test_functions(int m, std::uint64_t seed) {
  Draw d(seed + 0x9E3779B97F4A7C15ULL);
  std::vector<TestFunction> out;
  for (int i = 0; i < m; ++i) {
    std::vector<PowerTerm> terms;
    const int pieces = d.uniform(0.0, 1.0) < 0.5 ? 1 : 2;
    for (int j = 0; j < pieces; ++j) {
      const double r0 = std::exp2(d.uniform(-3.0, 1.0));
      terms.push_back({d.uniform(0.5, 2.0), d.uniform(-1.0, 1.0), r0, r0 * std::exp2(d.uniform(0.5, 3.0))});
    }
    out.push_back(TestFunction::from_terms(terms));
  }
  return out;
}

}  // namespace hausdorff
