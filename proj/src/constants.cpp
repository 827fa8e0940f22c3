#include "hausdorff/constants.hpp"

#include "hausdorff/matrix_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {

struct TheoremName {
  TheoremId id;
  const char* name;
};

constexpr TheoremName kTheorems[] = {
    {TheoremId::T3_1, "T3.1"},     {TheoremId::C3_1_1, "C3.1.1"}, {TheoremId::C3_1_2, "C3.1.2"},
    {TheoremId::T3_2, "T3.2"},     {TheoremId::C3_2_1, "C3.2.1"}, {TheoremId::C3_2_2, "C3.2.2"},
    {TheoremId::T3_3, "T3.3"},     {TheoremId::C3_3_1, "C3.3.1"}, {TheoremId::T3_4, "T3.4"},
    {TheoremId::T3_5, "T3.5"},     {TheoremId::T3_6, "T3.6"},
};

}  // namespace

const char* to_string(TheoremId id) {
  for (const auto& t : kTheorems)
    if (t.id == id) return t.name;
  return "?";
}

TheoremId theorem_from_string(const std::string& s) {
  for (const auto& t : kTheorems)
    if (s == t.name) return t.id;
  throw InvalidArgument("unknown theorem id '" + s + "'");
}

const char* to_string(ConstantId id) {
  switch (id) {
    case ConstantId::C1: return "C1";
    case ConstantId::C1_1: return "C1.1";
    case ConstantId::C1_2: return "C1.2";
    case ConstantId::C2: return "C2";
    case ConstantId::C2_1: return "C2.1";
    case ConstantId::C2_2: return "C2.2";
    case ConstantId::C3: return "C3";
    case ConstantId::C3_1: return "C3.1";
    case ConstantId::C4: return "C4";
    case ConstantId::C5_1: return "C5.1";
    case ConstantId::C5_2: return "C5.2";
    case ConstantId::C6_1: return "C6.1";
    case ConstantId::C6_2: return "C6.2";
  }
  return "?";
}

SpaceFamily space_family(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1:
    case TheoremId::C3_1_1:
    case TheoremId::C3_1_2:
    case TheoremId::T3_4:
      return SpaceFamily::Morrey;
    case TheoremId::T3_2:
    case TheoremId::C3_2_1:
    case TheoremId::C3_2_2:
      return SpaceFamily::Herz;
    default:
      return SpaceFamily::MorreyHerz;
  }
}

bool is_corollary(TheoremId id) {
  return id == TheoremId::C3_1_1 || id == TheoremId::C3_1_2 || id == TheoremId::C3_2_1 ||
         id == TheoremId::C3_2_2 || id == TheoremId::C3_3_1;
}

bool is_muckenhoupt(TheoremId id) {
  return id == TheoremId::T3_4 || id == TheoremId::T3_5 || id == TheoremId::T3_6;
}

bool is_hardy_cesaro(TheoremId id) { return id == TheoremId::C3_1_2 || id == TheoremId::C3_2_2; }

std::vector<Point> family_sample(int n) {
  std::vector<Point> out;
  Point diag = Point::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int j = -12; j <= 12; ++j) {
    const double t = std::ldexp(1.0, j) * 0.75;
    Point e = Point::Zero(n);
    e(0) = t;
    out.push_back(e);
    out.push_back(t * diag);
  }
  return out;
}

namespace {

class Checker {
 public:
  void equal(const std::string& name, double lhs, double rhs) {
    if (!(std::abs(lhs - rhs) <= kBalanceTol)) fail(name, lhs, "=", rhs);
  }
  void greater(const std::string& name, double lhs, double rhs) {
    if (!(lhs - rhs > kBalanceTol)) fail(name, lhs, ">", rhs);
  }
  void at_least(const std::string& name, double lhs, double rhs) {
    if (!(lhs >= rhs - kBalanceTol)) fail(name, lhs, ">=", rhs);
  }
  void below(const std::string& name, double lhs, double rhs) {
    if (!(rhs - lhs > kBalanceTol)) fail(name, lhs, "<", rhs);
  }
  void finite_from_one(const std::string& name, double v) {
    if (!(v >= 1.0 - kBalanceTol) || !std::isfinite(v)) fail(name, v, "in", 1.0);
  }
  void require(const std::string& name, bool ok, const std::string& detail) {
    if (!ok) add(name, detail);
  }
  void add(const std::string& name, const std::string& detail) {
    for (const auto& v : out_)
      if (v.name == name) return;
    out_.push_back({name, detail});
  }
  std::size_t count() const { return out_.size(); }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  void fail(const std::string& name, double lhs, const char* op, double rhs) {
    std::ostringstream os;
    os.precision(17);
    os << "have " << lhs << ", need " << op << " " << rhs;
    add(name, os.str());
  }
  std::vector<Violation> out_;
};

double conjugate(const std::optional<double>& r) {
  if (!r) return 1.0;
  return *r / (*r - 1.0);
}

void check_power_weights(const TheoremParams& p, Checker& c) {
  const double n = p.n;
  const auto& t = p.target;
  double sum_inv_q = 0.0, sum_inv_p = 0.0, sum_beta_q = 0.0, sum_gamma_q = 0.0;
  for (const auto& e : p.index) {
    c.greater("β_i>−n", e.beta, -n);
    c.greater("γ_i>−n", e.gamma, -n);
    c.finite_from_one("1≤q_i<∞", e.q);
    sum_inv_q += 1.0 / e.q;
    sum_inv_p += 1.0 / e.p;
    sum_beta_q += e.beta / e.q;
    sum_gamma_q += e.gamma / e.q;
  }
  c.greater("β>−n", t.beta, -n);
  c.greater("γ>−n", t.gamma, -n);
  c.finite_from_one("1≤q<∞", t.q);
  c.equal("Σ1/q_i=1/q", sum_inv_q, 1.0 / t.q);
  c.equal("Σγ_i/q_i=γ/q", sum_gamma_q, t.gamma / t.q);
  const SpaceFamily fam = space_family(p.theorem);
  if (fam != SpaceFamily::Morrey) {
    for (const auto& e : p.index) c.finite_from_one("1≤p_i<∞", e.p);
    c.finite_from_one("1≤p<∞", t.p);
    c.equal("Σ1/p_i=1/p", sum_inv_p, 1.0 / t.p);
    double lhs = 0.0;
    for (const auto& e : p.index) lhs += (1.0 + e.beta / n) * e.alpha;
    c.equal("Σ(1+β_i/n)α_i=(1+β/n)α", lhs, (1.0 + t.beta / n) * t.alpha);
  }
  if (fam == SpaceFamily::Morrey) {
    c.equal("Σβ_i/q_i=β/q", sum_beta_q, t.beta / t.q);
    double lam = 0.0, derived = 0.0;
    for (const auto& e : p.index) {
      lam += (n + e.beta) / (n + t.beta) * e.lambda;
      derived += (e.beta + n) * (e.lambda + 1.0 / e.q);
      c.greater("1+λ_iq_i>0", 1.0 + e.lambda * e.q, 0.0);
    }
    c.equal("Σ(n+β_i)λ_i/(n+β)=λ", lam, t.lambda);
    c.greater("1+λq>0", 1.0 + t.lambda * t.q, 0.0);
    c.equal("Σ(β_i+n)(λ_i+1/q_i)=(β+n)(λ+1/q)", derived, (t.beta + n) * (t.lambda + 1.0 / t.q));
  }
  if (fam == SpaceFamily::MorreyHerz) {
    double lam = 0.0;
    for (const auto& e : p.index) {
      c.greater("λ_i>0", e.lambda, 0.0);
      lam += (1.0 + e.beta / n) * e.lambda;
    }
    c.equal("Σ(1+β_i/n)λ_i=(1+β/n)λ", lam, (1.0 + t.beta / n) * t.lambda);
  }
  if (is_corollary(p.theorem)) {
    bool diag = true;
    for (const auto& f : p.op.families) diag = diag && f.kind() == MatrixFamily::Kind::DiagonalScalar;
    c.require("diagonal scalar families", diag, "every A_i must be s_i(y) I");
    c.require("φ≥0", p.op.kernel.nonnegative(), "kernel must be nonnegative");
    if (is_hardy_cesaro(p.theorem))
      c.require("convention hardy_cesaro_psi", p.op.kernel.convention() == Convention::HardyCesaroPsi,
                "Hardy-Cesaro constant needs psi on [0,1]^n");
  }
  try {
    auto rho = rho_bound(p.op, family_sample(p.n));
    c.require("ρ_A<∞", rho.has_value(), "condition product is unbounded");
  } catch (const SingularMatrix& e) {
    c.add("det A_i(y)≠0", e.what());
  }
}

void check_muckenhoupt(const TheoremParams& p, Checker& c) {
  if (!p.muckenhoupt) {
    c.add("Muckenhoupt parameters", "missing xi, eta, delta and critical indices");
    return;
  }
  const auto& mk = *p.muckenhoupt;
  const auto& t = p.target;
  const double n = p.n, m = p.m;
  c.finite_from_one("1≤q*<∞", t.q_star);
  c.finite_from_one("1≤ξ<∞", mk.xi);
  double sum_inv_q = 0.0, sum_lambda = 0.0, sum_alpha = 0.0, sum_inv_p = 0.0;
  for (const auto& e : p.index) {
    c.finite_from_one("1≤q_i<∞", e.q);
    sum_inv_q += 1.0 / e.q;
    sum_lambda += e.lambda;
    sum_alpha += e.alpha;
    sum_inv_p += 1.0 / e.p;
  }
  c.finite_from_one("1≤q<∞", t.q);
  c.equal("Σ1/q_i=1/q", sum_inv_q, 1.0 / t.q);
  c.equal("λ*=Σλ_i", t.lambda_star, sum_lambda);
  if (mk.r_omega) c.greater("r_ω>1", *mk.r_omega, 1.0);
  const double r_prime = conjugate(mk.r_omega);
  auto in_open = [&](const std::string& name, double d, const std::optional<double>& r) {
    c.greater(name, d, 1.0);
    if (r) c.below(name, d, *r);
  };
  if (p.theorem == TheoremId::T3_4) {
    c.finite_from_one("1≤η<∞", mk.eta);
    if (mk.r_v) c.greater("r_v>1", *mk.r_v, 1.0);
    for (const auto& e : p.index) {
      c.greater("−1/q_i<λ_i<0", e.lambda, -1.0 / e.q);
      c.below("−1/q_i<λ_i<0", e.lambda, 0.0);
    }
    c.greater("q>q*ξr'_ω", t.q, t.q_star * mk.xi * r_prime);
    in_open("δ1∈(1,r_ω)", mk.delta1, mk.r_omega);
    in_open("δ2∈(1,r_v)", mk.delta2, mk.r_v);
    return;
  }
  for (const auto& e : p.index) {
    c.below("α_i<0", e.alpha, 0.0);
    c.at_least("λ_i≥0", e.lambda, 0.0);
    c.finite_from_one("1≤p_i<∞", e.p);
  }
  c.finite_from_one("1≤p<∞", t.p);
  c.equal("Σ1/p_i=1/p", sum_inv_p, 1.0 / t.p);
  if (p.theorem == TheoremId::T3_5) {
    c.finite_from_one("1≤η<∞", mk.eta);
    if (mk.r_v) c.greater("r_v>1", *mk.r_v, 1.0);
    c.greater("q > max{mq*, q*ξr'_ω}", t.q, std::max(m * t.q_star, t.q_star * mk.xi * r_prime));
    in_open("δ1∈(1,r_ω)", mk.delta1, mk.r_omega);
    in_open("δ2∈(1,r_v)", mk.delta2, mk.r_v);
    const double lhs = (t.alpha_star / n + 1.0 / t.q_star) / m;
    for (const auto& e : p.index) c.equal("(α*/n+1/q*)/m=α_i/n+1/q_i", lhs, e.alpha / n + 1.0 / e.q);
    return;
  }
  c.greater("q>q*ξr'_ω", t.q, t.q_star * mk.xi * r_prime);
  in_open("δ∈(1,r_ω)", mk.delta, mk.r_omega);
  c.equal("α*/n+1/q*=Σα_i/n+1/q", t.alpha_star / n + 1.0 / t.q_star, sum_alpha / n + 1.0 / t.q);
  int nonpos = 0;
  for (const auto& e : p.index) nonpos += e.alpha / n + 1.0 / e.q <= 0.0 ? 1 : 0;
  c.require("α_i/n+1/q_i of one sign", nonpos == 0 || nonpos == p.m,
            "the signs of alpha_i/n + 1/q_i must agree across i");
}

}  // namespace

std::vector<Violation> validate_hypotheses(const TheoremParams& p) {
  Checker c;
  c.require("m≥1", p.m >= 1, "need at least one input");
  c.require("n≥1", p.n >= 1, "need dimension at least 1");
  c.require("index count = m", static_cast<int>(p.index.size()) == p.m, "one exponent block per input");
  c.require("operator m", p.op.m == p.m, "operator arity differs from m");
  c.require("operator n", p.op.n == p.n, "operator dimension differs from n");
  if (c.count() > 0) return c.take();
  try {
    p.op.validate();
  } catch (const Error& e) {
    c.add("operator", e.what());
    return c.take();
  }
  if (is_muckenhoupt(p.theorem))
    check_muckenhoupt(p, c);
  else
    check_power_weights(p, c);
  return c.take();
}

void require_hypotheses(const TheoremParams& params) {
  auto v = validate_hypotheses(params);
  if (v.empty()) return;
  std::string msg = "hypotheses violated:";
  for (const auto& x : v) msg += " [" + x.name + "] " + x.detail + ";";
  throw HypothesisViolation(msg);
}

ConstantId constant_id(const TheoremParams& p) {
  switch (p.theorem) {
    case TheoremId::T3_1: return ConstantId::C1;
    case TheoremId::C3_1_1: return ConstantId::C1_1;
    case TheoremId::C3_1_2: return ConstantId::C1_2;
    case TheoremId::T3_2: return ConstantId::C2;
    case TheoremId::C3_2_1: return ConstantId::C2_1;
    case TheoremId::C3_2_2: return ConstantId::C2_2;
    case TheoremId::T3_3: return ConstantId::C3;
    case TheoremId::C3_3_1: return ConstantId::C3_1;
    case TheoremId::T3_4: return ConstantId::C4;
    case TheoremId::T3_5:
      return p.target.alpha_star / p.n + 1.0 / p.target.q_star <= 0.0 ? ConstantId::C5_1 : ConstantId::C5_2;
    case TheoremId::T3_6: {
      for (const auto& e : p.index)
        if (e.alpha / p.n + 1.0 / e.q > 0.0) return ConstantId::C6_2;
      return ConstantId::C6_1;
    }
  }
  return ConstantId::C1;
}

double index_exponent(const TheoremParams& p, int i) {
  const auto& e = p.index.at(i);
  const double n = p.n;
  switch (space_family(p.theorem)) {
    case SpaceFamily::Morrey:
      return -(e.beta + n) * e.lambda + (e.gamma - e.beta) / e.q;
    case SpaceFamily::Herz:
      return (1.0 + e.beta / n) * e.alpha + (n + e.gamma) / e.q;
    case SpaceFamily::MorreyHerz:
      return (1.0 + e.beta / n) * (e.alpha - e.lambda) + (n + e.gamma) / e.q;
  }
  return 0.0;
}

namespace {

// Per-family quantities entering the integrands.
enum class Base { Norm, InvNorm, InvDet, InvScale };

// base_i(y)^e with e = exp_lt where ||A_i(y)|| < 1 (split only), exp_ge otherwise.
struct Factor {
  Base base;
  int family;
  double exp_lt;
  double exp_ge;
  bool split;
};

using Integrand = std::vector<Factor>;

Factor plain(Base b, int i, double e) { return {b, i, e, e, false}; }
Factor branch(int i, double lt, double ge) { return {Base::Norm, i, lt, ge, true}; }

struct Plan {
  ConstantId id;
  std::vector<Integrand> integrals;
  bool root_product = false;  // prod of integral^(1/m)
};

Plan make_plan(const TheoremParams& p) {
  Plan plan;
  plan.id = constant_id(p);
  const int m = p.m;
  const double n = p.n;
  if (!is_muckenhoupt(p.theorem)) {
    Integrand g;
    const Base b = is_corollary(p.theorem) ? Base::InvScale : Base::InvNorm;
    for (int i = 0; i < m; ++i) g.push_back(plain(b, i, index_exponent(p, i)));
    plan.integrals.push_back(g);
    return plan;
  }
  const auto& mk = *p.muckenhoupt;
  const auto& t = p.target;
  const double xi = mk.xi, eta = mk.eta;
  const double d1 = (mk.delta1 - 1.0) / mk.delta1, d2 = (mk.delta2 - 1.0) / mk.delta2;
  const double d = (mk.delta - 1.0) / mk.delta;
  if (plan.id == ConstantId::C4) {
    Integrand g;
    for (int i = 0; i < m; ++i) {
      const auto& e = p.index[i];
      const double lq = e.lambda + 1.0 / e.q;
      g.push_back(plain(Base::InvDet, i, xi / e.q));
      g.push_back(plain(Base::Norm, i, xi * n / e.q));
      g.push_back(branch(i, n * lq * d2, n * eta * lq));
      g.push_back(branch(i, -xi * n / e.q, -(n / e.q) * d1));
    }
    plan.integrals.push_back(g);
    return plan;
  }
  plan.root_product = true;
  for (int i = 0; i < m; ++i) {
    const auto& e = p.index[i];
    Integrand g;
    g.push_back(plain(Base::InvDet, i, m * xi / e.q));
    g.push_back(plain(Base::Norm, i, m * xi * n / e.q));
    const double as = t.alpha_star, a_ml = as - m * e.lambda;
    const double s = e.alpha / n + 1.0 / e.q;
    switch (plan.id) {
      case ConstantId::C5_1:
        g.push_back(branch(i, -((n / t.q_star + as) * d1 + a_ml * d2 - xi * as),
                           -((n / t.q_star + as) * xi + eta * a_ml - as * d1)));
        break;
      case ConstantId::C5_2:
        g.push_back(branch(i, -(xi * n / t.q_star + a_ml * d2), -((n / t.q_star) * d1 + eta * a_ml)));
        break;
      case ConstantId::C6_1:
        g.push_back(branch(i, m * (e.lambda - n * s * d), m * xi * (e.lambda - n * s)));
        break;
      default:
        g.push_back(branch(i, m * (e.lambda * d - n * xi * s), m * (e.lambda * xi - n * s * d)));
        break;
    }
    plan.integrals.push_back(g);
  }
  return plan;
}

// Variable the integrand depends on; family norms ignore rotation angles.
Var integrand_var(const OperatorSpec& op) {
  Var v = op.kernel.density_var(op.n);
  for (const auto& f : op.families) {
    auto sc = f.radial_scale();
    v = join(v, sc ? sc->var() : Var::Radius);
  }
  if (op.n == 1 && v == Var::First && op.kernel.support().kind != Support::Kind::Cube) v = Var::Radius;
  return v;
}

struct PowerData {
  Slice slice;
  double K = 0.0;  // |density| * measure = K t^E
  double E = 0.0;
  std::vector<Monomial> scale;  // |c_i| t^mu_i
};

std::optional<PowerData> power_data(const OperatorSpec& op) {
  if (!op.kernel.is_closed()) return std::nullopt;
  const Var v = integrand_var(op);
  auto sl = slice_for(op, v);
  if (!sl || sl->t_lo < 0.0) return std::nullopt;
  auto dens = slice_monomial(*op.kernel.density_expr(op.n), *sl);
  if (!dens) return std::nullopt;
  PowerData d;
  d.slice = *sl;
  d.K = sl->measure_coef * std::abs(dens->coef);
  d.E = sl->measure_exp + dens->exponent;
  for (const auto& f : op.families) {
    auto sc = f.radial_scale();
    if (!sc || !sc->power()) return std::nullopt;
    auto mono = slice_monomial(*sc->power(), *sl);
    if (!mono) return std::nullopt;
    d.scale.push_back({std::abs(mono->coef), mono->exponent});
  }
  return d;
}

Monomial base_monomial(Base b, const Monomial& s, int n) {
  const double rn = std::sqrt(static_cast<double>(n));
  switch (b) {
    case Base::Norm: return {rn * s.coef, s.exponent};
    case Base::InvNorm: return {rn / s.coef, -s.exponent};
    case Base::InvDet: return {std::pow(s.coef, -n), -n * s.exponent};
    case Base::InvScale: return {1.0 / s.coef, -s.exponent};
  }
  return {};
}

bool near_one(double v) { return std::abs(v - 1.0) <= kBalanceTol; }

Estimate closed_integral(const PowerData& d, const Integrand& g, int n, bool* ambiguous) {
  const Slice& sl = d.slice;
  std::vector<double> cuts{sl.t_lo, sl.t_hi};
  for (const auto& f : g) {
    if (!f.split) continue;
    const Monomial b = base_monomial(Base::Norm, d.scale[f.family], n);
    if (b.exponent == 0.0) {
      if (near_one(b.coef)) *ambiguous = true;
      continue;
    }
    const double t = std::pow(1.0 / b.coef, 1.0 / b.exponent);
    if (t > sl.t_lo && t < sl.t_hi) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    double mid;
    if (a == 0.0 && std::isinf(b)) mid = 1.0;
    else if (a == 0.0) mid = 0.5 * b;
    else if (std::isinf(b)) mid = 2.0 * a;
    else mid = std::sqrt(a * b);
    double coef = d.K, expo = d.E;
    for (const auto& f : g) {
      double e = f.exp_ge;
      if (f.split) {
        const Monomial nb = base_monomial(Base::Norm, d.scale[f.family], n);
        if (nb.coef * std::pow(mid, nb.exponent) < 1.0 && !near_one(nb.coef * std::pow(mid, nb.exponent)))
          e = f.exp_lt;
      }
      const Monomial bm = base_monomial(f.base, d.scale[f.family], n);
      coef *= std::pow(bm.coef, e);
      expo += bm.exponent * e;
    }
    if (coef == 0.0) continue;
    const double piece = power_integral(expo + 1.0, a, b);
    if (std::isinf(piece)) return {kInf, 0.0};
    total += coef * piece;
  }
  return {total, 0.0};
}

Estimate quadrature_integral(const TheoremParams& p, const Integrand& g, const QuadratureSpec& quad,
                             bool* ambiguous) {
  const OperatorSpec& op = p.op;
  std::vector<double> breaks;
  for (const auto& fam : op.families) {
    for (double b : fam.breakpoints()) breaks.push_back(b);
    if (fam.kind() == MatrixFamily::Kind::GeneralTable) {
      for (double e : fam.breakpoints()) {
        Point y = Point::Zero(op.n);
        y(0) = e;
        if (std::isfinite(e) && near_one(frobenius_norm(fam(y)))) *ambiguous = true;
      }
    }
  }
  if (auto d = power_data(op)) {
    for (const auto& f : g) {
      if (!f.split) continue;
      const Monomial b = base_monomial(Base::Norm, d->scale[f.family], op.n);
      if (b.exponent == 0.0) {
        if (near_one(b.coef)) *ambiguous = true;
      } else {
        breaks.push_back(std::pow(1.0 / b.coef, 1.0 / b.exponent));
      }
    }
  }
  auto h = [&](const Point& y) {
    double v = std::abs(op.kernel.density(y));
    if (v == 0.0) return 0.0;
    std::vector<Matrix> mats(op.m);
    std::vector<bool> have(op.m, false);
    for (const auto& f : g) {
      const int i = f.family;
      if (!have[i]) {
        mats[i] = op.families[i](y);
        have[i] = true;
      }
      const Matrix& A = mats[i];
      double e = f.exp_ge;
      if (f.split) {
        const double nv = frobenius_norm(A);
        if (nv < 1.0 && !near_one(nv)) e = f.exp_lt;
      }
      double base = 0.0;
      switch (f.base) {
        case Base::Norm: base = frobenius_norm(A); break;
        case Base::InvNorm: base = frobenius_norm(A.inverse()); break;
        case Base::InvDet: base = 1.0 / std::abs(A.determinant()); break;
        case Base::InvScale: base = 1.0 / std::abs((*op.families[i].radial_scale())(y)); break;
      }
      v *= std::pow(base, e);
    }
    return v;
  };
  return integrate_support(op, integrand_var(op), h, breaks, quad);
}

}  // namespace

ConstantResult evaluate_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                 ConstantMethod method) {
  if (is_muckenhoupt(params.theorem) && !params.muckenhoupt)
    throw InvalidArgument("Muckenhoupt constants need xi, eta and delta parameters");
  const Plan plan = make_plan(params);
  ConstantResult r;
  r.id = plan.id;
  auto pd = power_data(params.op);
  if (method == ConstantMethod::ClosedForm && !pd)
    throw InvalidArgument("no closed form for this kernel and these families");
  const bool closed = pd && method != ConstantMethod::Quadrature;
  r.closed_form = closed;
  std::vector<Estimate> parts;
  for (const auto& g : plan.integrals) {
    Estimate e = closed ? closed_integral(*pd, g, params.n, &r.branch_ambiguity)
                        : quadrature_integral(params, g, quad, &r.branch_ambiguity);
    if (!std::isfinite(e.value)) e = {kInf, 0.0};
    parts.push_back(e);
  }
  if (!plan.root_product) {
    r.value = parts.front().value;
    r.error = parts.front().error;
    return r;
  }
  double value = 1.0, rel = 0.0;
  bool zero = false;
  for (const auto& e : parts) {
    if (std::isinf(e.value)) {
      r.value = kInf;
      r.error = 0.0;
      return r;
    }
    if (e.value == 0.0) zero = true;
    value *= std::pow(e.value, 1.0 / params.m);
    if (e.value != 0.0) rel += std::abs(e.error / e.value) / params.m;
  }
  r.value = zero ? 0.0 : value;
  r.error = std::abs(r.value) * rel;
  return r;
}

ConstantResult compute_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                ConstantMethod method) {
  require_hypotheses(params);
  return evaluate_constant(params, quad, method);
}

ConstantResult compute_muckenhoupt_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                            ConstantMethod method) {
  if (!is_muckenhoupt(params.theorem))
    throw InvalidArgument(std::string("theorem ") + to_string(params.theorem) +
                          " has no Muckenhoupt constant");
  return compute_constant(params, quad, method);
}

}  // namespace hausdorff
