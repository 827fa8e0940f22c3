#pragma once

#include "hausdorff/io.hpp"

#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace hausdorff {

enum class Command { Norm, Apply, Constant, Verify, Weights, Sweep };

const char* to_string(Command c);
Command command_from_string(const std::string& s);

struct ResultRecord {
  std::string command;
  std::string id;
  double value = std::numeric_limits<double>::quiet_NaN();
  double error = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;  // empty for plain evaluations
  std::string message;  // set when the item raised an error
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  std::string inputs_json;

  bool failed() const { return !message.empty() || verdict == "Violation"; }
};

struct ExperimentItem {
  Command command = Command::Norm;
  std::string id;
  io::Json payload;
  std::function<std::vector<ResultRecord>(const QuadratureSpec&, const DyadicRange&)> run;
};

struct ExperimentConfig {
  QuadratureSpec quad;
  DyadicRange range = DyadicRange::standard();
  std::string output_path;
  std::vector<ExperimentItem> items;
};

// Accepts {"v":1, "quad":{..}, "range":{..}, "output_path":..,
// "experiments":[{"command":..,"id":..,"payload":{..}}, ..]} or a single
// item with "command" and "payload" at top level. Every payload is parsed
// here; throws ConfigError.
ExperimentConfig parse_config(const io::Json& j);

// Runs items in input order. Module errors land in the record's message.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

void write_csv(const std::vector<ResultRecord>& results, std::ostream& out, bool include_timing = true);
// Throws IoError.
void emit_csv(const std::vector<ResultRecord>& results, const std::string& path, bool include_timing = true);

}  // namespace hausdorff
