#pragma once

#include "hausdorff/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hausdorff {

// Which scalar a y-dependent quantity is a function of.
enum class Var { Const, Radius, First, General };

Var join(Var a, Var b);

// coef * |y|^radial_exp * y1^first_exp
struct PowerExpr {
  double coef = 1.0;
  double radial_exp = 0.0;
  double first_exp = 0.0;

  double operator()(const Point& y) const;
  Var var() const;
  // Exponent in the single variable of var(); zero for Const.
  double exponent() const { return radial_exp != 0.0 ? radial_exp : first_exp; }
  // Grammar: factors joined by '*': a number, |y| or y1, optionally ^number.
  static PowerExpr parse(const std::string& text);
  std::string to_string() const;
};

// A scalar function of y: grammar expression, linear table in |y| or y1, or
// an arbitrary callable.
class ScalarMap {
 public:
  struct Table {
    Var var = Var::Radius;
    std::vector<std::pair<double, double>> nodes;
  };
  using Callable = std::function<double(const Point&)>;

  ScalarMap() : impl_(PowerExpr{}) {}
  ScalarMap(PowerExpr e) : impl_(e) {}
  static ScalarMap constant(double c) { return ScalarMap(PowerExpr{c, 0.0, 0.0}); }
  static ScalarMap table(Var var, std::vector<std::pair<double, double>> nodes);
  static ScalarMap callable(Callable f);

  double operator()(const Point& y) const;
  Var var() const;
  std::optional<PowerExpr> power() const;
  const Table* as_table() const { return std::get_if<Table>(&impl_); }
  std::vector<double> breakpoints() const;

 private:
  std::variant<PowerExpr, Table, Callable> impl_;
};

enum class Convention { HausdorffPhi, HybridPhi, HardyCesaroPsi };

const char* to_string(Convention c);
Convention convention_from_string(const std::string& s);

struct Support {
  enum class Kind { All, Annulus, Cube };
  Kind kind = Kind::All;
  double lo = 0.0;   // annulus inner radius or cube lower corner
  double hi = kInf;  // annulus outer radius or cube upper corner

  static Support all() { return {}; }
  static Support annulus(double a, double b);
  static Support cube(double lo, double hi);
  bool contains(const Point& y) const;
};

class KernelSpec {
 public:
  KernelSpec() = default;
  static KernelSpec closed(PowerExpr expr, Support support, Convention convention);
  static KernelSpec sampled(ScalarMap::Callable f, Support support, Convention convention);

  // Integrand weight in y: Phi/|y|^n, phi or psi, zero off the support.
  double density(const Point& y) const;
  // density as a grammar expression in dimension n, if closed.
  std::optional<PowerExpr> density_expr(int n) const;
  Var density_var(int n) const;

  const Support& support() const { return support_; }
  Convention convention() const { return convention_; }
  bool is_closed() const { return expr_.has_value(); }
  const std::optional<PowerExpr>& expr() const { return expr_; }
  // Sign of the kernel where it is known; false when it may change sign.
  bool nonnegative() const;
  KernelSpec scaled(double c) const;

 private:
  std::optional<PowerExpr> expr_;
  ScalarMap::Callable fn_;
  Support support_;
  Convention convention_ = Convention::HybridPhi;
};

}  // namespace hausdorff
