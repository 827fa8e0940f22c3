#include "hausdorff/test_function.hpp"

#include "hausdorff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hausdorff {

struct TestFunction::Node {
  Kind kind = Kind::Sum;
  double a = 0.0;
  double r0 = 0.0;
  double r1 = kInf;
  double c = 1.0;
  bool radial = true;
  std::vector<TestFunction> children;
  Evaluator fn;
};

TestFunction::TestFunction() : node_(std::make_shared<Node>()) {}

TestFunction::TestFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

void check_cutoffs(double r0, double r1) {
  if (!(r0 >= 0.0) || !(r1 > r0)) throw InvalidArgument("cutoffs need 0 <= r0 < r1");
}

}  // namespace

TestFunction TestFunction::power(double a, double r0, double r1) {
  check_cutoffs(r0, r1);
  if (!std::isfinite(a)) throw InvalidArgument("power exponent must be finite");
  auto n = std::make_shared<Node>();
  n->kind = Kind::PowerLaw;
  n->a = a;
  n->r0 = r0;
  n->r1 = r1;
  return TestFunction(n);
}

TestFunction TestFunction::ball(double R) {
  if (!(R > 0.0)) throw InvalidArgument("ball radius must be positive");
  return annulus(0.0, R);
}

TestFunction TestFunction::annulus(double r0, double r1) {
  check_cutoffs(r0, r1);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Indicator;
  n->r0 = r0;
  n->r1 = r1;
  return TestFunction(n);
}

TestFunction TestFunction::scaled(double c, TestFunction f) {
  if (!std::isfinite(c)) throw InvalidArgument("scale must be finite");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scaled;
  n->c = c;
  n->radial = f.is_radial();
  n->children.push_back(std::move(f));
  return TestFunction(n);
}

TestFunction TestFunction::sum(std::vector<TestFunction> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->radial = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.is_radial(); });
  n->children = std::move(terms);
  return TestFunction(n);
}

TestFunction TestFunction::opaque(Evaluator f, bool radial) {
  if (!f) throw InvalidArgument("opaque function needs an evaluator");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Opaque;
  n->fn = std::move(f);
  n->radial = radial;
  return TestFunction(n);
}

TestFunction TestFunction::from_terms(const std::vector<PowerTerm>& terms) {
  std::vector<TestFunction> parts;
  for (const auto& t : terms) {
    if (t.coef == 0.0 || !(t.r1 > t.r0)) continue;
    TestFunction p = t.exponent == 0.0 ? annulus(t.r0, t.r1) : power(t.exponent, t.r0, t.r1);
    parts.push_back(t.coef == 1.0 ? p : scaled(t.coef, p));
  }
  if (parts.size() == 1) return parts.front();
  return sum(std::move(parts));
}

TestFunction::Kind TestFunction::kind() const { return node_->kind; }

bool TestFunction::is_symbolic() const {
  switch (node_->kind) {
    case Kind::PowerLaw:
    case Kind::Indicator:
      return true;
    case Kind::Opaque:
      return false;
    default:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [](const auto& c) { return c.is_symbolic(); });
  }
}

bool TestFunction::is_radial() const { return node_->radial; }

double TestFunction::radial(double r) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::PowerLaw:
      return (r > n.r0 && r <= n.r1) ? std::pow(r, n.a) : 0.0;
    case Kind::Indicator:
      return (r > n.r0 && r <= n.r1) ? 1.0 : 0.0;
    case Kind::Scaled:
      return n.c * n.children.front().radial(r);
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& c : n.children) s += c.radial(r);
      return s;
    }
    case Kind::Opaque:
      if (!n.radial) throw InvalidArgument("opaque function is not radial");
      {
        Point x = Point::Zero(1);
        x(0) = r;
        return n.fn(x);
      }
  }
  return 0.0;
}

double TestFunction::operator()(const Point& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Opaque:
      return n.fn(x);
    case Kind::Scaled:
      return n.c * n.children.front()(x);
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& c : n.children) s += c(x);
      return s;
    }
    default:
      return radial(x.norm());
  }
}

std::vector<PowerTerm> TestFunction::terms() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::PowerLaw:
      return {PowerTerm{1.0, n.a, n.r0, n.r1}};
    case Kind::Indicator:
      return {PowerTerm{1.0, 0.0, n.r0, n.r1}};
    case Kind::Scaled: {
      auto t = n.children.front().terms();
      for (auto& p : t) p.coef *= n.c;
      return t;
    }
    case Kind::Sum: {
      std::vector<PowerTerm> out;
      for (const auto& c : n.children) {
        auto t = c.terms();
        out.insert(out.end(), t.begin(), t.end());
      }
      return out;
    }
    case Kind::Opaque:
      throw InvalidArgument("opaque function has no symbolic terms");
  }
  return {};
}

TestFunction TestFunction::dilate(double delta) const {
  if (!(delta > 0.0)) throw InvalidArgument("dilation must be positive");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::PowerLaw:
      return scaled(std::pow(delta, n.a), power(n.a, n.r0 / delta, n.r1 / delta));
    case Kind::Indicator:
      return annulus(n.r0 / delta, n.r1 / delta);
    case Kind::Scaled:
      return scaled(n.c, n.children.front().dilate(delta));
    case Kind::Sum: {
      std::vector<TestFunction> parts;
      for (const auto& c : n.children) parts.push_back(c.dilate(delta));
      return sum(std::move(parts));
    }
    case Kind::Opaque: {
      auto fn = n.fn;
      return opaque([fn, delta](const Point& x) { return fn(delta * x); }, n.radial);
    }
  }
  return {};
}

bool TestFunction::is_zero() const {
  if (!is_symbolic()) return false;
  return RadialProfile(*this).is_zero();
}

double TestFunction::exponent() const { return node_->a; }
double TestFunction::inner() const { return node_->r0; }
double TestFunction::outer() const { return node_->r1; }
double TestFunction::coefficient() const { return node_->c; }
const std::vector<TestFunction>& TestFunction::children() const { return node_->children; }

RadialProfile::RadialProfile(const TestFunction& f) { build(f.terms()); }

RadialProfile::RadialProfile(const std::vector<PowerTerm>& terms) { build(terms); }

void RadialProfile::build(const std::vector<PowerTerm>& terms) {
  std::vector<double> cuts{0.0, kInf};
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    cuts.push_back(t.r0);
    cuts.push_back(t.r1);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Piece p{cuts[i], cuts[i + 1], {}};
    std::map<double, double> by_exp;
    for (const auto& t : terms) {
      if (t.coef != 0.0 && t.r0 <= p.lo && t.r1 >= p.hi) by_exp[t.exponent] += t.coef;
    }
    for (const auto& [e, c] : by_exp)
      if (c != 0.0) p.terms.push_back({c, e});
    pieces_.push_back(std::move(p));
  }
}

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> out;
  for (const auto& p : pieces_)
    if (p.lo > 0.0) out.push_back(p.lo);
  return out;
}

double RadialProfile::operator()(double r) const {
  for (const auto& p : pieces_) {
    if (r > p.lo && r <= p.hi) {
      double s = 0.0;
      for (const auto& m : p.terms) s += m.coef * std::pow(r, m.exponent);
      return s;
    }
  }
  return 0.0;
}

bool RadialProfile::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.terms.empty(); });
}

const std::vector<Monomial>& RadialProfile::near_zero() const {
  return pieces_.empty() ? empty_ : pieces_.front().terms;
}

const std::vector<Monomial>& RadialProfile::near_infinity() const {
  return pieces_.empty() ? empty_ : pieces_.back().terms;
}

namespace {

constexpr std::size_t kMaxExpansion = 4096;

// Exponent-wise expansion of (sum c_j r^e_j)^k.
std::vector<Monomial> expand_power(const std::vector<Monomial>& terms, int k) {
  std::map<double, double> acc{{0.0, 1.0}};
  for (int i = 0; i < k; ++i) {
    std::map<double, double> next;
    for (const auto& [e, c] : acc)
      for (const auto& t : terms) next[e + t.exponent] += c * t.coef;
    acc = std::move(next);
  }
  std::vector<Monomial> out;
  for (const auto& [e, c] : acc)
    if (c != 0.0) out.push_back({c, e});
  return out;
}

double dominant_exponent(const std::vector<Monomial>& terms, bool at_zero) {
  double e = terms.front().exponent;
  for (const auto& t : terms) e = at_zero ? std::min(e, t.exponent) : std::max(e, t.exponent);
  return e;
}

}  // namespace

std::optional<double> monomial_sum_lq(const std::vector<Monomial>& terms, double q, double w, int n,
                                      double a, double b) {
  if (terms.empty() || a >= b) return 0.0;
  const double area = sphere_area(n);
  if (a == 0.0 && dominant_exponent(terms, true) * q + w + n <= 0.0) return kInf;
  if (std::isinf(b) && dominant_exponent(terms, false) * q + w + n >= 0.0) return kInf;
  if (terms.size() == 1) {
    const auto& t = terms.front();
    return std::pow(std::abs(t.coef), q) * area * power_integral(t.exponent * q + w + n, a, b);
  }
  const double qi = std::round(q);
  if (qi != q || static_cast<int>(qi) % 2 != 0) return std::nullopt;
  if (std::pow(static_cast<double>(terms.size()), qi) > kMaxExpansion) return std::nullopt;
  double total = 0.0;
  for (const auto& m : expand_power(terms, static_cast<int>(qi)))
    total += m.coef * power_integral(m.exponent + w + n, a, b);
  return area * std::max(total, 0.0);
}

Estimate RadialProfile::lq_integral(double q, double w, int n, double a, double b,
                                    const QuadratureSpec& quad, bool* exact) const {
  if (exact) *exact = true;
  Estimate out;
  if (!(b > a)) return out;
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.lo), hi = std::min(b, p.hi);
    if (!(hi > lo) || p.terms.empty()) continue;
    auto closed = monomial_sum_lq(p.terms, q, w, n, lo, hi);
    if (closed) {
      if (std::isinf(*closed)) throw DivergentError("DivergentNorm: power exponent test fails");
      out.value += *closed;
      continue;
    }
    if (exact) *exact = false;
    const double area = sphere_area(n);
    const auto& terms = p.terms;
    auto integrand = [&](double r) {
      double g = 0.0;
      for (const auto& m : terms) g += m.coef * std::pow(r, m.exponent);
      return area * std::pow(std::abs(g), q) * std::pow(r, w + n - 1.0);
    };
    Estimate e = quad::integrate_log(integrand, lo, hi, quad);
    quad::require_converged(e, quad, "lq_integral");
    out.value += e.value;
    out.error += e.error;
  }
  return out;
}

}  // namespace hausdorff
