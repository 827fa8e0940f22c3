#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/test_function.hpp"
#include "hausdorff/weights.hpp"

#include <string>
#include <vector>

namespace hausdorff {

enum class SpaceKind { Lebesgue, CentralMorrey, Herz, MorreyHerz };

const char* to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);

struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lebesgue;
  double q = 2.0;
  double p = 2.0;
  double alpha = 0.0;
  double lambda = 0.0;
  Weight v = Weight::power(0.0, 1);
  Weight omega = Weight::power(0.0, 1);

  int dimension() const { return omega.dimension(); }
  void validate() const;
};

struct DyadicRange {
  int k_min = -40;
  int k_max = 40;
  std::vector<double> R_grid;
  std::vector<int> k0_grid;

  // k in [-40, 40], R = 2^-30 .. 2^30, k0 in [-30, 30].
  static DyadicRange standard();
  static DyadicRange with_bounds(int k_min, int k_max);
  void validate() const;
};

struct NormResult {
  double value = 0.0;
  double error = 0.0;
  bool divergent = false;
  bool truncated = false;
  bool exact = true;
  std::vector<std::string> warnings;
};

// (integral over C_k of |f|^q omega)^(1/q).
double annulus_norm(const TestFunction& f, int k, double q, const Weight& omega,
                    const QuadratureSpec& quad);

NormResult space_norm(const SpaceSpec& spec, const TestFunction& f, const DyadicRange& range,
                      const QuadratureSpec& quad);

}  // namespace hausdorff
