#include "hausdorff/io.hpp"

#include <fstream>

namespace hausdorff::io {

namespace {

const Json& require(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object holding '" + field + "'");
  auto it = j.find(field);
  if (it == j.end()) throw ConfigError(field, "missing required field");
  return *it;
}

double number_or(const Json& j, const std::string& field, double fallback) {
  if (!j.is_object() || !j.contains(field)) return fallback;
  return read_number(j.at(field), field);
}

int integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<int>();
}

int integer_or(const Json& j, const std::string& field, int fallback) {
  if (!j.contains(field)) return fallback;
  return integer(j.at(field), field);
}

std::string text(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

// Rewraps library validation errors so the message names the field.
template <typename F>
auto guarded(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

std::vector<std::pair<double, double>> read_nodes(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a nonempty list of [x, y] pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw ConfigError(field, "expected [x, y] pairs");
    out.emplace_back(read_number(e[0], field), read_number(e[1], field));
  }
  return out;
}

Var read_var(const Json& j, const std::string& field) {
  const std::string s = text(j, field);
  if (s == "radius") return Var::Radius;
  if (s == "y1") return Var::First;
  throw ConfigError(field, "expected \"radius\" or \"y1\"");
}

Matrix read_matrix(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a square matrix as a list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix A(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ConfigError(field, "matrix rows must have length " + std::to_string(n));
    for (Eigen::Index c = 0; c < n; ++c) A(r, c) = read_number(row[c], field);
  }
  return A;
}

IndexExponents read_index(const Json& j) {
  IndexExponents e;
  e.beta = number_or(j, "beta", 0.0);
  e.gamma = number_or(j, "gamma", 0.0);
  e.alpha = number_or(j, "alpha", 0.0);
  e.lambda = number_or(j, "lambda", 0.0);
  e.p = number_or(j, "p", 2.0);
  e.q = read_number(require(j, "q"), "q");
  return e;
}

TargetExponents read_target(const Json& j) {
  TargetExponents t;
  t.beta = number_or(j, "beta", 0.0);
  t.gamma = number_or(j, "gamma", 0.0);
  t.alpha = number_or(j, "alpha", 0.0);
  t.lambda = number_or(j, "lambda", 0.0);
  t.p = number_or(j, "p", 2.0);
  t.q = read_number(require(j, "q"), "q");
  t.q_star = number_or(j, "q_star", 1.0);
  t.alpha_star = number_or(j, "alpha_star", 0.0);
  t.lambda_star = number_or(j, "lambda_star", 0.0);
  return t;
}

}  // namespace

double read_number(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError(field, "expected a number");
}

Point read_point(const Json& j, const std::string& field) {
  if (j.is_number()) {
    Point x(1);
    x(0) = j.get<double>();
    return x;
  }
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a point");
  Point x(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) x(static_cast<Eigen::Index>(i)) = read_number(j[i], field);
  return x;
}

Weight read_weight(const Json& j) {
  const std::string kind = text(require(j, "kind"), "kind");
  const int n = integer(require(j, "n"), "n");
  if (n < 1) throw ConfigError("n", "dimension must be positive");
  if (kind == "power") return Weight::power(read_number(require(j, "gamma"), "gamma"), n);
  if (kind == "sampled") {
    const std::string path = text(require(j, "table"), "table");
    return guarded("table", [&] { return Weight::load_radial_table(n, path); });
  }
  throw ConfigError("kind", "unknown weight kind '" + kind + "'");
}

TestFunction read_function(const Json& j) {
  const std::string kind = text(require(j, "kind"), "kind");
  if (kind == "power") {
    const double a = read_number(require(j, "a"), "a");
    const double r0 = number_or(j, "r0", 0.0), r1 = number_or(j, "r1", kInf);
    if (!(r0 >= 0.0) || !(r1 > r0)) throw ConfigError("r1", "need 0 <= r0 < r1");
    TestFunction f = TestFunction::power(a, r0, r1);
    const double c = number_or(j, "coef", 1.0);
    return c == 1.0 ? f : TestFunction::scaled(c, f);
  }
  if (kind == "indicator") {
    const std::string shape = text(require(j, "shape"), "shape");
    if (shape == "ball") {
      const double R = read_number(require(j, "R"), "R");
      if (!(R > 0.0)) throw ConfigError("R", "radius must be positive");
      return TestFunction::ball(R);
    }
    if (shape == "annulus") {
      const double r0 = read_number(require(j, "r0"), "r0"), r1 = read_number(require(j, "r1"), "r1");
      if (!(r0 >= 0.0) || !(r1 > r0)) throw ConfigError("r1", "need 0 <= r0 < r1");
      return TestFunction::annulus(r0, r1);
    }
    throw ConfigError("shape", "unknown indicator shape '" + shape + "'");
  }
  if (kind == "scaled") {
    return TestFunction::scaled(read_number(require(j, "c"), "c"), read_function(require(j, "f")));
  }
  if (kind == "sum") {
    const Json& terms = require(j, "terms");
    if (!terms.is_array()) throw ConfigError("terms", "expected a list");
    std::vector<TestFunction> fs;
    for (const auto& t : terms) fs.push_back(read_function(t));
    return TestFunction::sum(std::move(fs));
  }
  throw ConfigError("kind", "unknown function kind '" + kind + "'");
}

SpaceSpec read_space(const Json& j) {
  SpaceSpec s;
  s.kind = guarded("kind", [&] { return space_kind_from_string(text(require(j, "kind"), "kind")); });
  s.q = read_number(require(j, "q"), "q");
  s.p = number_or(j, "p", 2.0);
  s.alpha = number_or(j, "alpha", 0.0);
  s.lambda = number_or(j, "lambda", 0.0);
  s.omega = read_weight(require(j, "omega"));
  s.v = j.contains("v") ? read_weight(j.at("v")) : s.omega;
  guarded("space", [&] { s.validate(); });
  return s;
}

Support read_support(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "all") return Support::all();
  if (j.is_object()) {
    auto pair = [&](const char* key) {
      const Json& b = j.at(key);
      if (!b.is_array() || b.size() != 2) throw ConfigError(key, "expected [lo, hi]");
      return std::pair{read_number(b[0], key), read_number(b[1], key)};
    };
    if (j.contains("all")) return Support::all();
    if (j.contains("annulus")) {
      auto [a, b] = pair("annulus");
      return guarded("annulus", [&] { return Support::annulus(a, b); });
    }
    if (j.contains("cube")) {
      auto [a, b] = pair("cube");
      return guarded("cube", [&] { return Support::cube(a, b); });
    }
  }
  throw ConfigError("support", "expected \"all\", {\"annulus\":[a,b]} or {\"cube\":[lo,hi]}");
}

ScalarMap read_scalar_map(const Json& j, const std::string& field) {
  if (j.is_number()) return ScalarMap::constant(j.get<double>());
  if (j.is_string()) return guarded(field, [&] { return ScalarMap(PowerExpr::parse(j.get<std::string>())); });
  if (j.is_object() && j.contains("nodes")) {
    const Var var = j.contains("var") ? read_var(j.at("var"), "var") : Var::Radius;
    auto nodes = read_nodes(j.at("nodes"), "nodes");
    return guarded(field, [&] { return ScalarMap::table(var, std::move(nodes)); });
  }
  throw ConfigError(field, "expected a number, an expression or {\"var\":..,\"nodes\":[..]}");
}

KernelSpec read_kernel(const Json& j) {
  const std::string kind = text(require(j, "kind"), "kind");
  const Support support = j.contains("support") ? read_support(j.at("support")) : Support::all();
  const Convention conv = j.contains("convention")
                              ? guarded("convention", [&] { return convention_from_string(text(j.at("convention"), "convention")); })
                              : Convention::HybridPhi;
  if (kind == "closed") {
    const std::string expr = text(require(j, "expr"), "expr");
    return guarded("expr", [&] { return KernelSpec::closed(PowerExpr::parse(expr), support, conv); });
  }
  if (kind == "table") {
    ScalarMap map = read_scalar_map(j, "nodes");
    return KernelSpec::sampled([map](const Point& y) { return map(y); }, support, conv);
  }
  throw ConfigError("kind", "unknown kernel kind '" + kind + "'");
}

MatrixFamily read_family(const Json& j) {
  const std::string kind = text(require(j, "kind"), "kind");
  if (kind == "diag_scalar") return MatrixFamily::diagonal(read_scalar_map(require(j, "expr"), "expr"));
  if (kind == "rotation") {
    const ScalarMap scale = j.contains("scale") ? read_scalar_map(j.at("scale"), "scale") : ScalarMap::constant(1.0);
    if (j.contains("matrix")) {
      Matrix q = read_matrix(j.at("matrix"), "matrix");
      return guarded("matrix", [&] { return MatrixFamily::rotation(std::move(q), scale); });
    }
    return MatrixFamily::planar_rotation(number_or(j, "theta0", 0.0), number_or(j, "theta1", 0.0), scale);
  }
  if (kind == "table") {
    const Json& edges_j = require(j, "edges");
    const Json& mats_j = require(j, "matrices");
    if (!edges_j.is_array() || !mats_j.is_array()) throw ConfigError("matrices", "expected lists");
    std::vector<double> edges;
    for (const auto& e : edges_j) edges.push_back(read_number(e, "edges"));
    std::vector<Matrix> mats;
    for (const auto& m : mats_j) mats.push_back(read_matrix(m, "matrices"));
    return guarded("matrices", [&] { return MatrixFamily::table(std::move(edges), std::move(mats)); });
  }
  throw ConfigError("kind", "unknown family kind '" + kind + "'");
}

OperatorSpec read_operator(const Json& j) {
  OperatorSpec op;
  op.m = integer(require(j, "m"), "m");
  op.n = integer(require(j, "n"), "n");
  op.kernel = read_kernel(require(j, "kernel"));
  const Json& fams = require(j, "families");
  if (!fams.is_array()) throw ConfigError("families", "expected a list");
  for (const auto& f : fams) op.families.push_back(read_family(f));
  guarded("operator", [&] { op.validate(); });
  return op;
}

MuckenhouptParams read_muckenhoupt(const Json& j) {
  MuckenhouptParams mk;
  mk.xi = number_or(j, "xi", 1.0);
  mk.eta = number_or(j, "eta", 1.0);
  mk.delta1 = number_or(j, "delta1", 2.0);
  mk.delta2 = number_or(j, "delta2", 2.0);
  mk.delta = number_or(j, "delta", 2.0);
  auto index = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    const Json& v = j.at(key);
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "unbounded")) return std::nullopt;
    const double r = read_number(v, key);
    if (std::isinf(r)) return std::nullopt;
    return r;
  };
  mk.r_omega = index("r_omega");
  mk.r_v = index("r_v");
  return mk;
}

TheoremParams read_theorem_params(const Json& j) {
  TheoremParams p;
  p.theorem = guarded("theorem", [&] { return theorem_from_string(text(require(j, "theorem"), "theorem")); });
  p.m = integer(require(j, "m"), "m");
  p.n = integer(require(j, "n"), "n");
  if (p.m < 1) throw ConfigError("m", "must be positive");
  if (p.n < 1) throw ConfigError("n", "must be positive");
  const Json& idx = require(j, "index");
  if (!idx.is_array() || static_cast<int>(idx.size()) != p.m)
    throw ConfigError("index", "expected a list of " + std::to_string(p.m) + " exponent records");
  for (const auto& e : idx) p.index.push_back(read_index(e));
  p.target = read_target(require(j, "target"));
  if (j.contains("muckenhoupt")) p.muckenhoupt = read_muckenhoupt(j.at("muckenhoupt"));
  else if (is_muckenhoupt(p.theorem)) throw ConfigError("muckenhoupt", "missing required field");
  p.op = read_operator(require(j, "operator"));
  if (p.op.m != p.m || p.op.n != p.n) throw ConfigError("operator", "m and n must match the theorem record");
  return p;
}

QuadratureSpec read_quadrature(const Json& j) {
  QuadratureSpec q;
  if (j.is_null()) return q;
  q.rel_tol = number_or(j, "rel_tol", q.rel_tol);
  q.abs_tol = number_or(j, "abs_tol", q.abs_tol);
  q.max_refinement = integer_or(j, "max_refinement", q.max_refinement);
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw ConfigError("seed", "expected a nonnegative integer");
    q.seed = j.at("seed").get<std::uint64_t>();
  }
  if (!(q.rel_tol > 0.0)) throw ConfigError("rel_tol", "must be positive");
  if (!(q.abs_tol >= 0.0)) throw ConfigError("abs_tol", "must be nonnegative");
  if (q.max_refinement < 1) throw ConfigError("max_refinement", "must be positive");
  return q;
}

DyadicRange read_range(const Json& j) {
  if (j.is_null()) return DyadicRange::standard();
  DyadicRange r = DyadicRange::with_bounds(integer_or(j, "k_min", -40), integer_or(j, "k_max", 40));
  if (j.contains("R_grid")) {
    r.R_grid.clear();
    for (const auto& v : j.at("R_grid")) r.R_grid.push_back(read_number(v, "R_grid"));
  }
  if (j.contains("k0_grid")) {
    r.k0_grid.clear();
    for (const auto& v : j.at("k0_grid")) r.k0_grid.push_back(integer(v, "k0_grid"));
  }
  guarded("range", [&] { r.validate(); });
  return r;
}

BallGrid read_grid(const Json& j, int n) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "standard")) return BallGrid::standard(n);
  BallGrid g;
  const Json& centers = require(j, "centers");
  const Json& radii = require(j, "radii");
  if (!centers.is_array() || !radii.is_array()) throw ConfigError("centers", "expected lists");
  for (const auto& c : centers) {
    Point x = read_point(c, "centers");
    if (x.size() != n) throw ConfigError("centers", "center dimension differs from the weight");
    g.centers.push_back(x);
  }
  for (const auto& r : radii) g.radii.push_back(read_number(r, "radii"));
  guarded("grid", [&] { g.validate(); });
  return g;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace hausdorff::io
