#include "hausdorff/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hausdorff {

using io::Json;

const char* to_string(Command c) {
  switch (c) {
    case Command::Norm: return "norm";
    case Command::Apply: return "apply";
    case Command::Constant: return "constant";
    case Command::Verify: return "verify";
    case Command::Weights: return "weights";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::Norm, Command::Apply, Command::Constant, Command::Verify, Command::Weights,
                    Command::Sweep})
    if (s == to_string(c)) return c;
  throw ConfigError("command", "unknown command '" + s + "'");
}

namespace {

using Records = std::vector<ResultRecord>;
using Runner = std::function<Records(const QuadratureSpec&, const DyadicRange&)>;

const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object() || !j.contains(name)) throw ConfigError(name, "missing required field");
  return j.at(name);
}

ResultRecord value_record(double value, double error) {
  ResultRecord r;
  r.value = value;
  r.error = error;
  return r;
}

ResultRecord report_record(const RatioReport& rep) {
  ResultRecord r = value_record(rep.ratio, rep.quadrature_error);
  r.verdict = to_string(rep.verdict);
  return r;
}

std::vector<TestFunction> read_functions(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("functions", "expected a nonempty list");
  std::vector<TestFunction> fs;
  for (const auto& f : j) fs.push_back(io::read_function(f));
  return fs;
}

ConstantMethod read_method(const Json& j) {
  if (!j.contains("method")) return ConstantMethod::Auto;
  const std::string s = j.at("method").is_string() ? j.at("method").get<std::string>() : "";
  if (s == "auto") return ConstantMethod::Auto;
  if (s == "closed_form") return ConstantMethod::ClosedForm;
  if (s == "quadrature") return ConstantMethod::Quadrature;
  throw ConfigError("method", "expected auto, closed_form or quadrature");
}

Runner norm_runner(const Json& p) {
  SpaceSpec space = io::read_space(field(p, "space"));
  TestFunction f = io::read_function(field(p, "function"));
  return [space, f](const QuadratureSpec& quad, const DyadicRange& range) {
    NormResult nr = space_norm(space, f, range, quad);
    ResultRecord r = value_record(nr.divergent ? kInf : nr.value, nr.error);
    if (nr.divergent) r.verdict = "Divergent";
    return Records{r};
  };
}

Runner apply_runner(const Json& p) {
  OperatorSpec op = io::read_operator(field(p, "operator"));
  std::vector<TestFunction> fs = read_functions(field(p, "functions"));
  if (static_cast<int>(fs.size()) != op.m) throw ConfigError("functions", "need one function per operator input");
  std::vector<Point> xs;
  if (p.contains("points")) {
    for (const auto& x : p.at("points")) xs.push_back(io::read_point(x, "points"));
  } else {
    xs.push_back(io::read_point(field(p, "x"), "x"));
  }
  for (const auto& x : xs)
    if (x.size() != op.n) throw ConfigError("x", "point dimension differs from the operator");
  return [op, fs, xs](const QuadratureSpec& quad, const DyadicRange&) {
    Records out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Estimate e = apply_operator_estimate(op, fs, xs[k], quad);
      out.push_back(value_record(e.value, e.error));
      if (xs.size() > 1) out.back().id = "x" + std::to_string(k);
    }
    return out;
  };
}

Runner constant_runner(const Json& p) {
  TheoremParams params = io::read_theorem_params(p);
  const ConstantMethod method = read_method(p);
  return [params, method](const QuadratureSpec& quad, const DyadicRange&) {
    ConstantResult c = is_muckenhoupt(params.theorem) ? compute_muckenhoupt_constant(params, quad, method)
                                                      : compute_constant(params, quad, method);
    ResultRecord r = value_record(c.value, c.error);
    r.verdict = to_string(c.id);
    if (c.branch_ambiguity) r.verdict += " BranchAmbiguity";
    return Records{r};
  };
}

FamilyShape read_shape(const Json& j) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "diagonal") return FamilyShape::Diagonal;
  if (s == "rotation") return FamilyShape::Rotation;
  throw ConfigError("shape", "expected diagonal or rotation");
}

Runner verify_runner(const Json& p) {
  const double K = p.contains("K_upper") ? io::read_number(p.at("K_upper"), "K_upper") : 10.0;
  if (!(K >= 1.0)) throw ConfigError("K_upper", "must be at least 1");
  if (p.contains("random")) {
    const Json& rj = p.at("random");
    const TheoremId id = [&] {
      try {
        return theorem_from_string(field(rj, "theorem").get<std::string>());
      } catch (const InvalidArgument& e) {
        throw ConfigError("theorem", e.what());
      }
    }();
    if (is_muckenhoupt(id)) throw ConfigError("theorem", "no ratio harness for Muckenhoupt results");
    const int m = field(rj, "m").get<int>(), n = field(rj, "n").get<int>();
    const int cases = rj.value("cases", 50);
    const FamilyShape shape = rj.contains("shape") ? read_shape(rj.at("shape")) : FamilyShape::Rotation;
    if (m < 1 || n < 1 || cases < 1) throw ConfigError("random", "m, n and cases must be positive");
    if (shape == FamilyShape::Rotation && n != 2) throw ConfigError("n", "rotation families need n = 2");
    return [=](const QuadratureSpec& quad, const DyadicRange& range) {
      Records out;
      for (int k = 0; k < cases; ++k) {
        const std::uint64_t seed = quad.seed + static_cast<std::uint64_t>(k);
        ResultRecord r;
        try {
          TheoremParams params = random_admissible_params(id, m, n, shape, seed);
          RatioReport rep = empirical_ratio(params, random_test_functions(m, seed), range, quad);
          r = value_record(rep.ratio, rep.quadrature_error);
          r.verdict = rep.vacuous || rep.ratio <= K * rep.constant ? "UpperBoundOk" : "Violation";
        } catch (const Error& e) {
          r.message = e.what();
        }
        r.id = "case" + std::to_string(k);
        r.seed = seed;
        out.push_back(r);
      }
      return out;
    };
  }
  TheoremParams params = io::read_theorem_params(field(p, "params"));
  if (is_muckenhoupt(params.theorem)) throw ConfigError("theorem", "no ratio harness for Muckenhoupt results");
  if (p.contains("functions")) {
    std::vector<TestFunction> fs = read_functions(p.at("functions"));
    if (static_cast<int>(fs.size()) != params.m) throw ConfigError("functions", "need one function per input");
    return [params, fs](const QuadratureSpec& quad, const DyadicRange& range) {
      return Records{report_record(empirical_ratio(params, fs, range, quad))};
    };
  }
  const int cases = p.value("cases", 8);
  return [params, K, cases](const QuadratureSpec& quad, const DyadicRange& range) {
    return Records{report_record(two_sided_check(params, K, range, quad, cases))};
  };
}

Runner weights_runner(const Json& p) {
  Weight w = io::read_weight(field(p, "weight"));
  const std::string op = field(p, "op").is_string() ? p.at("op").get<std::string>() : "";
  const int n = w.dimension();
  if (op == "mass") {
    const Point c = p.contains("center") ? io::read_point(p.at("center"), "center") : Point(Point::Zero(n));
    const double R = io::read_number(field(p, "radius"), "radius");
    if (c.size() != n) throw ConfigError("center", "dimension differs from the weight");
    if (!(R > 0.0)) throw ConfigError("radius", "must be positive");
    return [w, c, R](const QuadratureSpec& quad, const DyadicRange&) {
      ResultRecord r;
      try {
        r = value_record(ball_mass(w, c, R, quad), 0.0);
      } catch (const DivergentError&) {
        r = value_record(kInf, 0.0);
        r.verdict = "Divergent";
      }
      return Records{r};
    };
  }
  const BallGrid grid = io::read_grid(p.contains("grid") ? p.at("grid") : Json(), n);
  auto optional_record = [](std::optional<double> v, const char* none) {
    ResultRecord r = value_record(v ? *v : kInf, 0.0);
    if (!v) r.verdict = none;
    return Records{r};
  };
  if (op == "ap") {
    const double xi = io::read_number(field(p, "xi"), "xi");
    if (!(xi >= 1.0)) throw ConfigError("xi", "must be at least 1");
    return [=](const QuadratureSpec& quad, const DyadicRange&) {
      return optional_record(ap_characteristic(w, xi, grid, quad), "Divergent");
    };
  }
  if (op == "rh") {
    const double r = io::read_number(field(p, "r"), "r");
    if (!(r > 1.0)) throw ConfigError("r", "must exceed 1");
    return [=](const QuadratureSpec& quad, const DyadicRange&) {
      return optional_record(rh_constant(w, r, grid, quad), "Divergent");
    };
  }
  if (op == "critical") {
    std::vector<double> r_grid;
    if (p.contains("r_grid")) {
      for (const auto& v : p.at("r_grid")) r_grid.push_back(io::read_number(v, "r_grid"));
    } else {
      for (int k = 1; k <= 40; ++k) r_grid.push_back(1.0 + 0.25 * k);
    }
    return [=](const QuadratureSpec& quad, const DyadicRange&) {
      return optional_record(critical_index_estimate(w, r_grid, grid, quad), "Unbounded");
    };
  }
  throw ConfigError("op", "expected mass, ap, rh or critical");
}

Runner sweep_runner(const Json& p) {
  TheoremParams params = io::read_theorem_params(field(p, "params"));
  if (is_muckenhoupt(params.theorem)) throw ConfigError("theorem", "no ratio harness for Muckenhoupt results");
  std::vector<double> eps = default_eps_list();
  if (p.contains("eps")) {
    eps.clear();
    for (const auto& e : p.at("eps")) eps.push_back(io::read_number(e, "eps"));
    if (eps.empty()) throw ConfigError("eps", "expected a nonempty list");
  }
  return [params, eps](const QuadratureSpec& quad, const DyadicRange& range) {
    SweepResult s = sharpness_sweep(params, eps, range, quad);
    Records out;
    for (const auto& rep : s.reports) {
      ResultRecord r = report_record(rep);
      std::ostringstream id;
      id << "eps=" << rep.epsilon;
      r.id = id.str();
      out.push_back(r);
    }
    ResultRecord summary = value_record(s.reports.back().ratio, s.reports.back().quadrature_error);
    summary.id = "summary";
    summary.verdict = s.bounded && s.nondecreasing ? "LowerBoundOk" : "Violation";
    out.push_back(summary);
    return out;
  };
}

Runner make_runner(Command c, const Json& payload) {
  switch (c) {
    case Command::Norm: return norm_runner(payload);
    case Command::Apply: return apply_runner(payload);
    case Command::Constant: return constant_runner(payload);
    case Command::Verify: return verify_runner(payload);
    case Command::Weights: return weights_runner(payload);
    case Command::Sweep: return sweep_runner(payload);
  }
  throw ConfigError("command", "unknown command");
}

ExperimentItem parse_item(const Json& j, std::size_t index) {
  if (!j.is_object()) throw ConfigError("experiments", "each experiment must be an object");
  ExperimentItem item;
  const Json& cmd = field(j, "command");
  if (!cmd.is_string()) throw ConfigError("command", "expected a string");
  item.command = command_from_string(cmd.get<std::string>());
  item.id = j.contains("id") && j.at("id").is_string() ? j.at("id").get<std::string>()
                                                       : std::string(to_string(item.command)) + std::to_string(index);
  item.payload = field(j, "payload");
  try {
    item.run = make_runner(item.command, item.payload);
  } catch (const Json::exception& e) {
    throw ConfigError("payload", e.what());
  }
  return item;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  if (!j.contains("v")) throw ConfigError("v", "missing required field");
  if (!j.at("v").is_number_integer() || j.at("v").get<int>() != 1) throw ConfigError("v", "unsupported schema version");
  ExperimentConfig c;
  c.quad = io::read_quadrature(j.contains("quad") ? j.at("quad") : Json());
  c.range = io::read_range(j.contains("range") ? j.at("range") : Json());
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) throw ConfigError("output_path", "expected a string");
    c.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("experiments")) {
    const Json& list = j.at("experiments");
    if (!list.is_array()) throw ConfigError("experiments", "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) c.items.push_back(parse_item(list[i], i));
  } else if (j.contains("command")) {
    c.items.push_back(parse_item(j, 0));
  }
  return c;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  std::vector<ResultRecord> out;
  for (const auto& item : config.items) {
    const auto start = std::chrono::steady_clock::now();
    Records recs;
    try {
      recs = item.run(config.quad, config.range);
    } catch (const Error& e) {
      ResultRecord r;
      r.message = e.what();
      recs = {r};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const std::string inputs = item.payload.dump();
    for (auto& r : recs) {
      r.command = to_string(item.command);
      r.id = r.id.empty() ? item.id : item.id + "/" + r.id;
      if (r.seed == 0) r.seed = config.quad.seed;
      r.elapsed_ms = ms / static_cast<double>(recs.size());
      r.inputs_json = inputs;
      out.push_back(std::move(r));
    }
  }
  return out;
}

void write_csv(const std::vector<ResultRecord>& results, std::ostream& out, bool include_timing) {
  out << "command,id,value,error,verdict,seed,elapsed_ms,inputs_json\n";
  for (const auto& r : results) {
    const bool err = !r.message.empty();
    out << csv_field(r.command) << ',' << csv_field(r.id) << ',' << format_double(r.value) << ','
        << (err ? csv_field(r.message) : format_double(r.error)) << ',' << csv_field(err ? "Error" : r.verdict)
        << ',' << r.seed << ',' << (include_timing ? format_double(r.elapsed_ms) : "") << ','
        << csv_field(r.inputs_json) << '\n';
  }
}

void emit_csv(const std::vector<ResultRecord>& results, const std::string& path, bool include_timing) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_csv(results, f, include_timing);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace hausdorff
