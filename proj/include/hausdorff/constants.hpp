#pragma once

#include "hausdorff/core.hpp"
#include "hausdorff/operators.hpp"
#include "hausdorff/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hausdorff {

// Morrey (T3_1), Herz (T3_2) and Morrey-Herz (T3_3) results with power
// weights, their diagonal-scalar (C*_1) and Hardy-Cesaro (C*_2)
// specializations, and the Muckenhoupt-weight results T3_4 .. T3_6.
enum class TheoremId { T3_1, C3_1_1, C3_1_2, T3_2, C3_2_1, C3_2_2, T3_3, C3_3_1, T3_4, T3_5, T3_6 };

enum class ConstantId { C1, C1_1, C1_2, C2, C2_1, C2_2, C3, C3_1, C4, C5_1, C5_2, C6_1, C6_2 };

const char* to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);
const char* to_string(ConstantId id);

enum class SpaceFamily { Morrey, Herz, MorreyHerz };
SpaceFamily space_family(TheoremId id);
bool is_corollary(TheoremId id);
bool is_muckenhoupt(TheoremId id);
// C3_1_2 and C3_2_2: the Hardy-Cesaro specializations.
bool is_hardy_cesaro(TheoremId id);

struct IndexExponents {
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double p = 2.0;
  double q = 2.0;
};

struct TargetExponents {
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double p = 2.0;
  double q = 2.0;
  double q_star = 1.0;
  double alpha_star = 0.0;
  double lambda_star = 0.0;
};

struct TheoremParams {
  TheoremId theorem = TheoremId::T3_1;
  int m = 1;
  int n = 1;
  std::vector<IndexExponents> index;
  TargetExponents target;
  std::optional<MuckenhouptParams> muckenhoupt;
  OperatorSpec op;
};

struct Violation {
  std::string name;
  std::string detail;
};

std::vector<Violation> validate_hypotheses(const TheoremParams& params);
// Throws HypothesisViolation listing every violated name.
void require_hypotheses(const TheoremParams& params);

// Sample points used for the rho_A check.
std::vector<Point> family_sample(int n);

ConstantId constant_id(const TheoremParams& params);

enum class ConstantMethod { Auto, ClosedForm, Quadrature };

struct ConstantResult {
  ConstantId id = ConstantId::C1;
  double value = 0.0;  // +inf when divergent
  double error = 0.0;
  bool closed_form = false;
  bool branch_ambiguity = false;
};

// Exponent b_i of the family factor in the C1 / C2 / C3 integrands.
double index_exponent(const TheoremParams& params, int i);

// Validates, then evaluates.
ConstantResult compute_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                ConstantMethod method = ConstantMethod::Auto);
ConstantResult compute_muckenhoupt_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                            ConstantMethod method = ConstantMethod::Auto);
// The integral alone, without the hypothesis check.
ConstantResult evaluate_constant(const TheoremParams& params, const QuadratureSpec& quad,
                                 ConstantMethod method = ConstantMethod::Auto);

}  // namespace hausdorff
