#include "hausdorff/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace hausdorff {

Var join(Var a, Var b) {
  if (a == Var::Const) return b;
  if (b == Var::Const) return a;
  return a == b ? a : Var::General;
}

double PowerExpr::operator()(const Point& y) const {
  double v = coef;
  if (radial_exp != 0.0) v *= std::pow(y.norm(), radial_exp);
  if (first_exp != 0.0) v *= std::pow(y(0), first_exp);
  return v;
}

Var PowerExpr::var() const {
  if (radial_exp != 0.0 && first_exp != 0.0) return Var::General;
  if (radial_exp != 0.0) return Var::Radius;
  if (first_exp != 0.0) return Var::First;
  return Var::Const;
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse expression '" + whole + "'");
  }
  if (used != s.size()) throw InvalidArgument("cannot parse expression '" + whole + "'");
  return v;
}

}  // namespace

PowerExpr PowerExpr::parse(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw InvalidArgument("empty expression");
  PowerExpr e;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t star = s.find('*', pos);
    if (star == std::string::npos) star = s.size();
    std::string f = s.substr(pos, star - pos);
    if (f.empty()) throw InvalidArgument("cannot parse expression '" + text + "'");
    double power = 1.0;
    std::string base = f;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      base = f.substr(0, caret);
      std::string p = f.substr(caret + 1);
      if (!p.empty() && p.front() == '(' && p.back() == ')') p = p.substr(1, p.size() - 2);
      power = parse_number(p, text);
    }
    double sign = 1.0;
    if (!base.empty() && base.front() == '-' && (base == "-|y|" || base == "-y1")) {
      sign = -1.0;
      base = base.substr(1);
    }
    if (base == "|y|") {
      e.radial_exp += power;
      e.coef *= sign;
    } else if (base == "y1") {
      e.first_exp += power;
      e.coef *= sign;
    } else {
      e.coef *= std::pow(parse_number(base, text), power);
    }
    pos = star + 1;
    if (star == s.size()) break;
  }
  return e;
}

std::string PowerExpr::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << coef;
  if (radial_exp != 0.0) os << "*|y|^" << radial_exp;
  if (first_exp != 0.0) os << "*y1^" << first_exp;
  return os.str();
}

ScalarMap ScalarMap::table(Var var, std::vector<std::pair<double, double>> nodes) {
  if (var != Var::Radius && var != Var::First) throw InvalidArgument("table variable must be |y| or y1");
  if (nodes.empty()) throw InvalidArgument("scalar table is empty");
  std::sort(nodes.begin(), nodes.end());
  ScalarMap m;
  m.impl_ = Table{var, std::move(nodes)};
  return m;
}

ScalarMap ScalarMap::callable(Callable f) {
  if (!f) throw InvalidArgument("scalar map needs a callable");
  ScalarMap m;
  m.impl_ = std::move(f);
  return m;
}

double ScalarMap::operator()(const Point& y) const {
  if (auto* e = std::get_if<PowerExpr>(&impl_)) return (*e)(y);
  if (auto* t = std::get_if<Table>(&impl_)) {
    const double x = t->var == Var::Radius ? y.norm() : y(0);
    const auto& nd = t->nodes;
    if (x <= nd.front().first) return nd.front().second;
    if (x >= nd.back().first) return nd.back().second;
    auto it = std::upper_bound(nd.begin(), nd.end(), std::make_pair(x, -kInf));
    const auto& [x1, v1] = *it;
    const auto& [x0, v0] = *(it - 1);
    return x1 == x0 ? v1 : v0 + (v1 - v0) * (x - x0) / (x1 - x0);
  }
  return std::get<Callable>(impl_)(y);
}

Var ScalarMap::var() const {
  if (auto* e = std::get_if<PowerExpr>(&impl_)) return e->var();
  if (auto* t = std::get_if<Table>(&impl_)) return t->var;
  return Var::General;
}

std::optional<PowerExpr> ScalarMap::power() const {
  if (auto* e = std::get_if<PowerExpr>(&impl_)) return *e;
  return std::nullopt;
}

std::vector<double> ScalarMap::breakpoints() const {
  std::vector<double> out;
  if (auto* t = std::get_if<Table>(&impl_))
    for (const auto& nd : t->nodes) out.push_back(nd.first);
  return out;
}

const char* to_string(Convention c) {
  switch (c) {
    case Convention::HausdorffPhi: return "hausdorff_phi";
    case Convention::HybridPhi: return "hybrid_phi";
    case Convention::HardyCesaroPsi: return "hardy_cesaro_psi";
  }
  return "?";
}

Convention convention_from_string(const std::string& s) {
  if (s == "hausdorff_phi") return Convention::HausdorffPhi;
  if (s == "hybrid_phi") return Convention::HybridPhi;
  if (s == "hardy_cesaro_psi") return Convention::HardyCesaroPsi;
  throw InvalidArgument("unknown kernel convention '" + s + "'");
}

Support Support::annulus(double a, double b) {
  if (!(a >= 0.0) || !(b > a)) throw InvalidArgument("annulus support needs 0 <= a < b");
  return {Kind::Annulus, a, b};
}

Support Support::cube(double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidArgument("cube support needs finite lo < hi");
  return {Kind::Cube, lo, hi};
}

bool Support::contains(const Point& y) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Annulus: {
      const double r = y.norm();
      return r >= lo && r <= hi;
    }
    case Kind::Cube:
      return (y.array() >= lo).all() && (y.array() <= hi).all();
  }
  return false;
}

KernelSpec KernelSpec::closed(PowerExpr expr, Support support, Convention convention) {
  KernelSpec k;
  k.expr_ = expr;
  k.support_ = convention == Convention::HardyCesaroPsi ? Support::cube(0.0, 1.0) : support;
  k.convention_ = convention;
  return k;
}

KernelSpec KernelSpec::sampled(ScalarMap::Callable f, Support support, Convention convention) {
  if (!f) throw InvalidArgument("sampled kernel needs a callable");
  KernelSpec k;
  k.fn_ = std::move(f);
  k.support_ = convention == Convention::HardyCesaroPsi ? Support::cube(0.0, 1.0) : support;
  k.convention_ = convention;
  return k;
}

double KernelSpec::density(const Point& y) const {
  if (!support_.contains(y)) return 0.0;
  double v = expr_ ? (*expr_)(y) : fn_(y);
  if (convention_ == Convention::HausdorffPhi) v /= std::pow(y.norm(), static_cast<double>(y.size()));
  return v;
}

std::optional<PowerExpr> KernelSpec::density_expr(int n) const {
  if (!expr_) return std::nullopt;
  PowerExpr e = *expr_;
  if (convention_ == Convention::HausdorffPhi) e.radial_exp -= n;
  return e;
}

Var KernelSpec::density_var(int n) const {
  auto e = density_expr(n);
  return e ? e->var() : Var::General;
}

bool KernelSpec::nonnegative() const {
  if (!expr_) return false;
  if (expr_->coef < 0.0) return false;
  if (expr_->first_exp != 0.0 && support_.kind == Support::Kind::Cube && support_.lo >= 0.0) return true;
  return expr_->first_exp == 0.0;
}

KernelSpec KernelSpec::scaled(double c) const {
  KernelSpec k = *this;
  if (k.expr_) {
    k.expr_->coef *= c;
  } else {
    auto f = fn_;
    k.fn_ = [f, c](const Point& y) { return c * f(y); };
  }
  return k;
}

}  // namespace hausdorff
