#pragma once

#include "hausdorff/constants.hpp"
#include "hausdorff/spaces.hpp"
#include "hausdorff/verify.hpp"
#include "hausdorff/weights.hpp"

#include <json.hpp>

#include <string>

namespace hausdorff::io {

using Json = nlohmann::json;

// Readers throw ConfigError naming the offending field. Numbers may be
// given as "inf".
double read_number(const Json& j, const std::string& field);

Weight read_weight(const Json& j);
TestFunction read_function(const Json& j);
SpaceSpec read_space(const Json& j);
Support read_support(const Json& j);
ScalarMap read_scalar_map(const Json& j, const std::string& field);
KernelSpec read_kernel(const Json& j);
MatrixFamily read_family(const Json& j);
OperatorSpec read_operator(const Json& j);
MuckenhouptParams read_muckenhoupt(const Json& j);
TheoremParams read_theorem_params(const Json& j);
QuadratureSpec read_quadrature(const Json& j);
DyadicRange read_range(const Json& j);
BallGrid read_grid(const Json& j, int n);
Point read_point(const Json& j, const std::string& field);

Json load_json_file(const std::string& path);

}  // namespace hausdorff::io
