#pragma once

#include "hausdorff/core.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hausdorff {

enum class WeightKind { PowerLaw, Sampled };

class Weight {
 public:
  using Evaluator = std::function<double(const Point&)>;

  // |x|^gamma on R^n.
  static Weight power(double gamma, int n);
  // Arbitrary nonnegative weight; radial says it depends on |x| only.
  static Weight sampled(int n, Evaluator eval, bool radial = false);
  // Radial weight from a table of (r, w) pairs, linearly interpolated and
  // held constant outside the table.
  static Weight radial_table(int n, std::vector<std::pair<double, double>> table);
  static Weight load_radial_table(int n, const std::string& csv_path);

  WeightKind kind() const { return kind_; }
  bool is_power() const { return kind_ == WeightKind::PowerLaw; }
  bool is_radial() const { return radial_; }
  double exponent() const { return gamma_; }
  int dimension() const { return n_; }

  double operator()(const Point& x) const;
  double radial(double r) const;

 private:
  WeightKind kind_ = WeightKind::PowerLaw;
  double gamma_ = 0.0;
  int n_ = 1;
  bool radial_ = true;
  Evaluator eval_;
  std::shared_ptr<const std::function<double(double)>> radial_eval_;
};

struct BallGrid {
  std::vector<Point> centers;
  std::vector<double> radii;

  // Origin plus eight seeded off-center points, radii 2^-20 .. 2^20.
  static BallGrid standard(int n, std::uint64_t seed = 0);
  static BallGrid single(const Point& center, double radius);
  void validate() const;
};

struct MuckenhouptParams {
  double xi = 1.0;
  double eta = 1.0;
  double delta1 = 2.0;
  double delta2 = 2.0;
  double delta = 2.0;
  std::optional<double> r_omega;  // empty means unbounded
  std::optional<double> r_v;
};

// Integral of w^s over B(center, R); power weights use exact cap geometry.
double ball_integral(const Weight& w, double s, const Point& center, double R,
                     const QuadratureSpec& quad);

double ball_mass(const Weight& w, const Point& center, double R, const QuadratureSpec& quad);

// Whether w^s fails to be integrable on B(center, R), decided by exponents.
bool power_divergent_on_ball(const Weight& w, double s, const Point& center, double R);

// A_xi quotient on a single ball; empty when the dual integral diverges.
std::optional<double> ap_quotient(const Weight& w, double xi, const Point& center, double R,
                                  const QuadratureSpec& quad);
std::optional<double> ap_characteristic(const Weight& w, double xi, const BallGrid& grid,
                                        const QuadratureSpec& quad);

std::optional<double> rh_quotient(const Weight& w, double r, const Point& center, double R,
                                  const QuadratureSpec& quad);
std::optional<double> rh_constant(const Weight& w, double r, const BallGrid& grid,
                                  const QuadratureSpec& quad);

// Critical reverse Holder index; empty means unbounded. Power weights use
// the exponent rule, other weights a scan over r_grid refined by bisection.
std::optional<double> critical_index_estimate(const Weight& w, const std::vector<double>& r_grid,
                                              const BallGrid& grid, const QuadratureSpec& quad);

struct IndexBracket {
  double lower = 1.0;            // largest r seen finite
  std::optional<double> upper;   // smallest r seen divergent, empty if none
};

// Scan r_grid for the first divergent rh_constant, then bisect to resolution.
IndexBracket critical_index_bracket(const Weight& w, const std::vector<double>& r_grid,
                                    const BallGrid& grid, const QuadratureSpec& quad,
                                    double resolution = 0.05);

// |x|^gamma in A_xi(R^n).
bool power_in_ap(double gamma, int n, double xi);

}  // namespace hausdorff
