#pragma once

#include "hausdorff/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_01.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace hausdorff::quad {

inline constexpr double kLogLo = -60.0;
inline constexpr double kLogHi = 60.0;
// Reported error may exceed the requested tolerance by this factor before
// the estimate is rejected.
inline constexpr double kFailureSlack = 1e3;

inline int max_intervals(const QuadratureSpec& spec) {
  return 1 << std::clamp(spec.max_refinement, 1, 12);
}

// Global adaptive Gauss-Kronrod (7/15) on a finite interval.
template <class F>
Estimate adaptive(F&& f, double a, double b, const QuadratureSpec& spec) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Seg {
    double a, b, value, error;
    bool operator<(const Seg& o) const { return error < o.error; }
  };
  if (a == b) return {};
  // The rule runs on [-1, 1] so that its error estimate scales with the segment.
  auto eval = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double err = 0.0;
    const double v = GK::integrate([&](double x) { return f(mid + h * x); }, -1.0, 1.0, 0, 0.0, &err);
    return Seg{lo, hi, h * v, h * err};
  };
  std::priority_queue<Seg> heap;
  Seg first = eval(a, b);
  heap.push(first);
  double total = first.value, total_err = first.error;
  const int cap = max_intervals(spec);
  int count = 1;
  while (count < cap && total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    Seg s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      heap.push(s);
      break;
    }
    Seg l = eval(s.a, mid), r = eval(mid, s.b);
    total += l.value + r.value - s.value;
    total_err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  if (!std::isfinite(total) || count >= cap) {
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
      total += heap.top().value;
      total_err += heap.top().error;
      heap.pop();
    }
  }
  return {total, std::max(total_err, 0.0)};
}

inline void require_converged(const Estimate& e, const QuadratureSpec& spec, const char* what) {
  if (!std::isfinite(e.value)) return;
  const double allowed = kFailureSlack * std::max(spec.abs_tol, spec.rel_tol * std::abs(e.value));
  if (e.error > allowed) {
    throw QuadratureFailure(std::string(what) + ": error estimate " + std::to_string(e.error) +
                            " exceeds tolerance");
  }
}

// Power-law tail of g near an end point, from two samples one octave apart.
// Returns the integral of g over (0, t0] (toward_zero) or [t0, inf).
template <class F>
double tail(F&& g, double t0, bool toward_zero) {
  const double g0 = g(t0);
  if (g0 == 0.0 || !std::isfinite(g0)) return std::isfinite(g0) ? 0.0 : g0;
  const double g1 = toward_zero ? g(2.0 * t0) : g(0.5 * t0);
  if (g1 == 0.0 || (g1 > 0) != (g0 > 0)) return 0.0;
  const double E = toward_zero ? std::log2(g1 / g0) : std::log2(g0 / g1);
  if (toward_zero) {
    if (E <= -1.0 + 1e-9) return g0 > 0 ? kInf : -kInf;
    return g0 * t0 / (E + 1.0);
  }
  if (E >= -1.0 - 1e-9) return g0 > 0 ? kInf : -kInf;
  return -g0 * t0 / (E + 1.0);
}

// Integral of f over (a, b) with 0 <= a < b <= inf on dyadic cells
// [2^j, 2^(j+1)]. Ends at 0 or inf are cut at 2^-60 / 2^60 and closed by a
// fitted power-law tail; a divergent tail yields an infinite value.
template <class F>
Estimate integrate_log(F&& f, double a, double b, std::span<const double> breaks,
                       const QuadratureSpec& spec) {
  if (!(a >= 0.0) || !(b > a)) return {};
  const double tlo = a > 0.0 ? a : std::exp2(kLogLo);
  const double thi = std::isinf(b) ? std::exp2(kLogHi) : b;
  Estimate out;
  if (a == 0.0) out.value += tail(f, std::min(tlo, thi), true);
  if (std::isinf(b)) out.value += tail(f, std::max(thi, tlo), false);
  if (!std::isfinite(out.value)) return out;
  if (thi <= tlo) return out;
  std::vector<double> nodes{tlo, thi};
  for (double u = std::floor(std::log2(tlo)) + 1.0; std::exp2(u) < thi; u += 1.0) {
    const double t = std::exp2(u);
    if (t > tlo) nodes.push_back(t);
  }
  for (double t : breaks)
    if (t > tlo && t < thi) nodes.push_back(t);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-14 * std::abs(y); }),
              nodes.end());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Estimate e = adaptive(f, nodes[i], nodes[i + 1], spec);
    out.value += e.value;
    out.error += e.error;
  }
  return out;
}

template <class F>
Estimate integrate_log(F&& f, double a, double b, const QuadratureSpec& spec) {
  return integrate_log(std::forward<F>(f), a, b, std::span<const double>{}, spec);
}

// Integral over the real interval (a, b) with log cells on each side of 0.
template <class F>
Estimate integrate_line(F&& f, double a, double b, std::span<const double> breaks,
                        const QuadratureSpec& spec) {
  Estimate out;
  if (b > 0.0) {
    std::vector<double> pos;
    for (double t : breaks)
      if (t > 0.0) pos.push_back(t);
    Estimate e = integrate_log(f, std::max(a, 0.0), b, pos, spec);
    out.value += e.value;
    out.error += e.error;
  }
  if (a < 0.0) {
    std::vector<double> neg;
    for (double t : breaks)
      if (t < 0.0) neg.push_back(-t);
    auto h = [&](double t) { return f(-t); };
    Estimate e = integrate_log(h, std::max(-b, 0.0), -a, neg, spec);
    out.value += e.value;
    out.error += e.error;
  }
  return out;
}

// Randomized quasi-Monte Carlo mean of f over [0,1)^dim: Sobol points with
// independent Cranley-Patterson shifts per replicate.
template <class F>
Estimate rqmc_mean(int dim, F&& f, std::uint64_t seed, int points = 4096, int replicates = 16) {
  boost::random::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  boost::random::uniform_01<double> unif;
  std::vector<double> means;
  std::vector<double> base(static_cast<std::size_t>(dim) * points);
  {
    boost::random::sobol gen(dim);
    const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
    for (auto& v : base) v = static_cast<double>(gen()) * scale;
  }
  std::vector<double> u(dim);
  for (int rep = 0; rep < replicates; ++rep) {
    std::vector<double> shift(dim);
    for (auto& s : shift) s = unif(rng);
    double acc = 0.0;
    for (int p = 0; p < points; ++p) {
      for (int d = 0; d < dim; ++d) {
        double v = base[static_cast<std::size_t>(p) * dim + d] + shift[d];
        u[d] = v - std::floor(v);
      }
      acc += f(std::span<const double>(u));
    }
    means.push_back(acc / points);
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= replicates;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= std::max(1, replicates - 1);
  return {mean, std::sqrt(var / replicates)};
}

// Number of uniform coordinates used by unit_vector for dimension n.
inline int direction_dims(int n) { return n <= 2 ? 1 : (n == 3 ? 2 : n); }

// Maps uniform coordinates to a uniformly distributed unit vector.
inline Point unit_vector(int n, std::span<const double> u) {
  Point x(n);
  if (n == 1) {
    x(0) = u[0] < 0.5 ? 1.0 : -1.0;
  } else if (n == 2) {
    const double th = 2.0 * M_PI * u[0];
    x << std::cos(th), std::sin(th);
  } else if (n == 3) {
    const double z = 2.0 * u[0] - 1.0, ph = 2.0 * M_PI * u[1];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    x << s * std::cos(ph), s * std::sin(ph), z;
  } else {
    for (int i = 0; i < n; ++i) {
      const double v = std::clamp(u[i], 1e-15, 1.0 - 1e-15);
      x(i) = std::sqrt(2.0) * boost::math::erf_inv(2.0 * v - 1.0);
    }
    const double r = x.norm();
    if (r == 0.0) {
      x.setZero();
      x(0) = 1.0;
    } else {
      x /= r;
    }
  }
  return x;
}

// Integral of g over the unit sphere S^{n-1} (unnormalized surface measure).
// Tensor Gauss-Kronrod for n <= 3, randomized QMC beyond.
template <class G>
Estimate sphere_integral(int n, G&& g, const QuadratureSpec& spec) {
  if (n == 1) {
    Point p(1), m(1);
    p << 1.0;
    m << -1.0;
    return {g(p) + g(m), 0.0};
  }
  if (n == 2) {
    auto h = [&](double th) {
      Point x(2);
      x << std::cos(th), std::sin(th);
      return g(x);
    };
    return adaptive(h, 0.0, 2.0 * M_PI, spec);
  }
  if (n == 3) {
    double err = 0.0;
    auto outer = [&](double z) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      auto inner = [&](double ph) {
        Point x(3);
        x << s * std::cos(ph), s * std::sin(ph), z;
        return g(x);
      };
      Estimate e = adaptive(inner, 0.0, 2.0 * M_PI, spec);
      err += e.error;
      return e.value;
    };
    Estimate e = adaptive(outer, -1.0, 1.0, spec);
    return {e.value, e.error};
  }
  const double area = sphere_area(n);
  Estimate e = rqmc_mean(
      n, [&](std::span<const double> u) { return g(unit_vector(n, u)); }, spec.seed, 2048, 8);
  return {area * e.value, area * e.error};
}

}  // namespace hausdorff::quad
