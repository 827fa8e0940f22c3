#include "hausdorff/weights.hpp"

#include "hausdorff/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hausdorff {

Weight Weight::power(double gamma, int n) {
  if (n < 1) throw InvalidArgument("weight dimension must be positive");
  if (!std::isfinite(gamma)) throw InvalidArgument("weight exponent must be finite");
  Weight w;
  w.kind_ = WeightKind::PowerLaw;
  w.gamma_ = gamma;
  w.n_ = n;
  w.radial_ = true;
  return w;
}

Weight Weight::sampled(int n, Evaluator eval, bool radial) {
  if (n < 1) throw InvalidArgument("weight dimension must be positive");
  if (!eval) throw InvalidArgument("sampled weight needs an evaluator");
  Weight w;
  w.kind_ = WeightKind::Sampled;
  w.n_ = n;
  w.radial_ = radial;
  w.eval_ = std::move(eval);
  return w;
}

Weight Weight::radial_table(int n, std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw InvalidArgument("radial weight table is empty");
  std::sort(table.begin(), table.end());
  for (const auto& [r, v] : table) {
    if (!(r >= 0.0) || !(v >= 0.0) || !std::isfinite(v))
      throw InvalidArgument("radial weight table needs r >= 0 and finite w >= 0");
  }
  auto interp = std::make_shared<const std::function<double(double)>>(
      [t = std::move(table)](double r) {
        if (r <= t.front().first) return t.front().second;
        if (r >= t.back().first) return t.back().second;
        auto it = std::upper_bound(t.begin(), t.end(), std::make_pair(r, -kInf));
        const auto& [r1, w1] = *it;
        const auto& [r0, w0] = *(it - 1);
        if (r1 == r0) return w1;
        return w0 + (w1 - w0) * (r - r0) / (r1 - r0);
      });
  Weight w = sampled(
      n, [interp](const Point& x) { return (*interp)(x.norm()); }, true);
  w.radial_eval_ = interp;
  return w;
}

Weight Weight::load_radial_table(int n, const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot read weight table " + csv_path);
  std::vector<std::pair<double, double>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double r = 0.0, v = 0.0;
    if (ss >> r >> v) table.emplace_back(r, v);
  }
  return radial_table(n, std::move(table));
}

double Weight::operator()(const Point& x) const {
  if (kind_ == WeightKind::PowerLaw) return std::pow(x.norm(), gamma_);
  return eval_(x);
}

double Weight::radial(double r) const {
  if (kind_ == WeightKind::PowerLaw) return std::pow(r, gamma_);
  if (radial_eval_) return (*radial_eval_)(r);
  if (!radial_) throw InvalidArgument("weight is not radial");
  Point x = Point::Zero(n_);
  x(0) = r;
  return eval_(x);
}

BallGrid BallGrid::standard(int n, std::uint64_t seed) {
  BallGrid g;
  g.centers.push_back(Point::Zero(n));
  boost::random::mt19937_64 rng(seed + 17);
  boost::random::uniform_real_distribution<double> coord(-1.0, 1.0), scale(-3.0, 3.0);
  for (int i = 0; i < 8; ++i) {
    Point c(n);
    for (int j = 0; j < n; ++j) c(j) = coord(rng);
    if (c.norm() == 0.0) c(0) = 1.0;
    g.centers.push_back(c * std::exp2(scale(rng)) / c.norm());
  }
  for (int k = -20; k <= 20; ++k) g.radii.push_back(dyadic(k));
  return g;
}

BallGrid BallGrid::single(const Point& center, double radius) {
  BallGrid g;
  g.centers.push_back(center);
  g.radii.push_back(radius);
  g.validate();
  return g;
}

void BallGrid::validate() const {
  if (centers.empty() || radii.empty()) throw InvalidArgument("ball grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InvalidArgument("ball radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("ball radii must ascend");
  }
  for (const auto& c : centers)
    if (c.size() != centers.front().size()) throw InvalidArgument("ball centers differ in dimension");
}

namespace {

void check_ball(const Weight& w, const Point& center, double R) {
  if (!(R > 0.0)) throw InvalidArgument("ball radius must be positive");
  if (center.size() != w.dimension()) throw InvalidArgument("ball center dimension mismatch");
}

double ball_volume(int n, double R) { return unit_ball_volume(n) * std::pow(R, n); }

// Integral over B(c, R) of a radial function h(|x|) for r in [lo, d + R];
// tanh-sinh absorbs the square-root behaviour of the cap at both ends.
template <class H>
Estimate radial_over_ball(int n, H&& h, double d, double R, double lo, const QuadratureSpec& quad) {
  const double area = sphere_area(n);
  auto integrand = [&](double r) {
    const double f = cap_fraction(n, r, d, R);
    return f == 0.0 ? 0.0 : area * h(r) * std::pow(r, n - 1) * f;
  };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  Estimate e;
  double l1 = 0.0;
  const double mid = 0.5 * (lo + d + R), half = 0.5 * (d + R - lo);
  auto local = [&](double t) { return half * integrand(mid + half * t); };
  e.value = ts.integrate(local, -1.0, 1.0, quad.rel_tol, &e.error, &l1);
  return e;
}

}  // namespace

bool power_divergent_on_ball(const Weight& w, double s, const Point& center, double R) {
  if (!w.is_power()) return false;
  return s * w.exponent() <= -w.dimension() && center.norm() <= R;
}

double ball_integral(const Weight& w, double s, const Point& center, double R,
                     const QuadratureSpec& quad) {
  check_ball(w, center, R);
  const int n = w.dimension();
  const double d = center.norm();
  if (w.is_power()) {
    if (power_divergent_on_ball(w, s, center, R))
      throw DivergentError("DivergentMass: weight power not integrable on ball containing 0");
    const double e = s * w.exponent();
    if (d == 0.0) return sphere_area(n) * std::pow(R, n + e) / (n + e);
    double inner = 0.0;
    double lo = std::max(0.0, d - R);
    if (d < R) {
      inner = sphere_area(n) * std::pow(R - d, n + e) / (n + e);
      lo = R - d;
    }
    auto h = [&](double r) { return std::pow(r, e); };
    Estimate est = radial_over_ball(n, h, d, R, lo, quad);
    quad::require_converged(est, quad, "ball_mass");
    return inner + est.value;
  }
  if (w.is_radial()) {
    auto h = [&](double r) { return std::pow(w.radial(r), s); };
    double lo = std::max(0.0, d - R), inner = 0.0;
    if (d < R) {
      auto hi = [&](double r) { return sphere_area(n) * h(r) * std::pow(r, n - 1); };
      Estimate in = quad::integrate_log(hi, 0.0, R - d, quad);
      quad::require_converged(in, quad, "ball_mass");
      inner = in.value;
      lo = R - d;
    }
    Estimate est = radial_over_ball(n, h, d, R, lo, quad);
    est.value += inner;
    quad::require_converged(est, quad, "ball_mass");
    return est.value;
  }
  const int dims = 1 + quad::direction_dims(n);
  Estimate est = quad::rqmc_mean(
      dims,
      [&](std::span<const double> u) {
        const double rho = std::pow(u[0], 1.0 / n);
        Point x = center + R * rho * quad::unit_vector(n, u.subspan(1));
        return std::pow(w(x), s);
      },
      quad.seed);
  return ball_volume(n, R) * est.value;
}

double ball_mass(const Weight& w, const Point& center, double R, const QuadratureSpec& quad) {
  return ball_integral(w, 1.0, center, R, quad);
}

namespace {

// Deterministic low-discrepancy minimum of w over the ball.
double sampled_minimum(const Weight& w, const Point& center, double R) {
  const int n = w.dimension();
  const int dims = 1 + quad::direction_dims(n);
  boost::random::sobol gen(dims);
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  std::vector<double> u(dims);
  double best = kInf;
  for (int p = 0; p < 4096; ++p) {
    for (auto& v : u) v = (static_cast<double>(gen()) + 0.5) * scale;
    Point x = center + R * std::pow(u[0], 1.0 / n) * quad::unit_vector(n, std::span<const double>(u).subspan(1));
    best = std::min(best, w(x));
  }
  return best;
}

}  // namespace

std::optional<double> ap_quotient(const Weight& w, double xi, const Point& center, double R,
                                  const QuadratureSpec& quad) {
  if (!(xi >= 1.0)) throw InvalidArgument("xi must be at least 1");
  check_ball(w, center, R);
  if (power_divergent_on_ball(w, 1.0, center, R)) return std::nullopt;
  const int n = w.dimension();
  const double vol = ball_volume(n, R);
  const double mean = ball_mass(w, center, R, quad) / vol;
  if (xi == 1.0) {
    double inf;
    if (w.is_power()) {
      const double g = w.exponent(), d = center.norm();
      if (g > 0.0 && d <= R) return std::nullopt;
      if (g > 0.0) inf = std::pow(d - R, g);
      else if (g < 0.0) inf = std::pow(d + R, g);
      else inf = 1.0;
    } else {
      inf = sampled_minimum(w, center, R);
    }
    if (!(inf > 0.0)) return std::nullopt;
    return mean / inf;
  }
  const double s = -1.0 / (xi - 1.0);
  if (power_divergent_on_ball(w, s, center, R)) return std::nullopt;
  const double dual = ball_integral(w, s, center, R, quad) / vol;
  if (!std::isfinite(dual)) return std::nullopt;
  return mean * std::pow(dual, xi - 1.0);
}

std::optional<double> ap_characteristic(const Weight& w, double xi, const BallGrid& grid,
                                        const QuadratureSpec& quad) {
  grid.validate();
  double best = 0.0;
  for (const auto& c : grid.centers) {
    for (double R : grid.radii) {
      auto q = ap_quotient(w, xi, c, R, quad);
      if (!q) return std::nullopt;
      best = std::max(best, *q);
    }
  }
  return best;
}

std::optional<double> rh_quotient(const Weight& w, double r, const Point& center, double R,
                                  const QuadratureSpec& quad) {
  if (!(r > 1.0)) throw InvalidArgument("reverse Holder exponent must exceed 1");
  check_ball(w, center, R);
  if (power_divergent_on_ball(w, r, center, R) || power_divergent_on_ball(w, 1.0, center, R))
    return std::nullopt;
  const double vol = ball_volume(w.dimension(), R);
  const double top = ball_integral(w, r, center, R, quad) / vol;
  const double mean = ball_mass(w, center, R, quad) / vol;
  if (!std::isfinite(top) || !(mean > 0.0)) return std::nullopt;
  return std::pow(top, 1.0 / r) / mean;
}

std::optional<double> rh_constant(const Weight& w, double r, const BallGrid& grid,
                                  const QuadratureSpec& quad) {
  grid.validate();
  double best = 0.0;
  for (const auto& c : grid.centers) {
    for (double R : grid.radii) {
      auto q = rh_quotient(w, r, c, R, quad);
      if (!q) return std::nullopt;
      best = std::max(best, *q);
    }
  }
  return best;
}

namespace {

// Sampled weights never report divergence; a quotient past this is treated as blow-up.
constexpr double kBlowUp = 1e6;

bool rh_finite(const Weight& w, double r, const BallGrid& grid, const QuadratureSpec& quad) {
  auto v = rh_constant(w, r, grid, quad);
  return v && std::isfinite(*v) && *v < kBlowUp;
}

}  // namespace

IndexBracket critical_index_bracket(const Weight& w, const std::vector<double>& r_grid,
                                    const BallGrid& grid, const QuadratureSpec& quad,
                                    double resolution) {
  if (r_grid.empty()) throw InvalidArgument("r_grid is empty");
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw InvalidArgument("r_grid must ascend");
  IndexBracket b;
  for (double r : r_grid) {
    if (rh_finite(w, r, grid, quad)) {
      b.lower = std::max(b.lower, r);
    } else {
      b.upper = r;
      break;
    }
  }
  if (!b.upper) return b;
  double lo = b.lower, hi = *b.upper;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 1.0 && rh_finite(w, mid, grid, quad)) lo = mid;
    else hi = mid;
  }
  b.lower = lo;
  b.upper = hi;
  return b;
}

std::optional<double> critical_index_estimate(const Weight& w, const std::vector<double>& r_grid,
                                              const BallGrid& grid, const QuadratureSpec& quad) {
  if (w.is_power()) {
    if (w.exponent() >= 0.0) return std::nullopt;
    return w.dimension() / -w.exponent();
  }
  IndexBracket b = critical_index_bracket(w, r_grid, grid, quad);
  if (!b.upper) return std::nullopt;
  return b.lower;
}

bool power_in_ap(double gamma, int n, double xi) {
  if (xi == 1.0) return gamma > -n && gamma <= 0.0;
  return gamma > -n && gamma < n * (xi - 1.0);
}

}  // namespace hausdorff
