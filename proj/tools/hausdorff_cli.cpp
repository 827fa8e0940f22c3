#include "hausdorff/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace hausdorff;

int main(int argc, char** argv) {
  CLI::App app{"Batch runner for Hausdorff operator experiments"};
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> kmin, kmax;
  std::optional<double> tol;
  bool no_timing = false;
  app.add_option("--config", config_path, "experiment JSON")->required();
  app.add_option("--out", out_path, "CSV output path (default: the config's output_path, else stdout)");
  app.add_option("--seed", seed, "quadrature seed");
  app.add_option("--kmin", kmin, "lowest dyadic shell index");
  app.add_option("--kmax", kmax, "highest dyadic shell index");
  app.add_option("--tol", tol, "relative quadrature tolerance");
  app.add_flag("--no-timing", no_timing, "leave elapsed_ms empty so output is byte-reproducible");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig config = parse_config(io::load_json_file(config_path));
    if (seed) config.quad.seed = *seed;
    if (tol) {
      if (!(*tol > 0.0)) throw ConfigError("tol", "must be positive");
      config.quad.rel_tol = *tol;
    }
    if (kmin || kmax) {
      DyadicRange r = DyadicRange::with_bounds(kmin.value_or(config.range.k_min), kmax.value_or(config.range.k_max));
      r.R_grid = config.range.R_grid;
      r.k0_grid = config.range.k0_grid;
      try {
        r.validate();
      } catch (const Error& e) {
        throw ConfigError("kmin", e.what());
      }
      config.range = r;
    }
    if (!out_path.empty()) config.output_path = out_path;

    const auto results = run_experiment(config);
    if (config.output_path.empty()) {
      write_csv(results, std::cout, !no_timing);
    } else {
      emit_csv(results, config.output_path, !no_timing);
    }
    int failures = 0;
    for (const auto& r : results) {
      if (!r.failed()) continue;
      ++failures;
      std::cerr << r.command << ' ' << r.id << ": " << (r.message.empty() ? r.verdict : r.message) << '\n';
    }
    return failures == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
