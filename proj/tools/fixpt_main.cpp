// Command-line front end: fixpt run | center | verify-example34 | emit-plot-data.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixpt/report.hpp"
#include "fixpt/runner.hpp"

namespace {

int report(const fixpt::RunOutcome& r, const std::string& label) {
  std::cout << label << " status=" << r.status << " exit=" << r.exit_status;
  if (!r.output_dir.empty()) std::cout << " dir=" << r.output_dir;
  std::cout << '\n';
  if (r.exit_status != fixpt::kExitOk) {
    std::cerr << "fixpt: " << r.status << ": " << (r.reason.empty() ? "-" : r.reason) << '\n';
  }
  return r.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard iteration and asymptotic-center laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fixpt::kToolVersion);

  std::vector<std::string> configs;
  std::string output;
  bool sweep = false;
  auto* run = app.add_subcommand("run", "Run scenario config(s)");
  run->add_option("config", configs, "Scenario file (or a report.json to re-run)")->required();
  run->add_option("-o,--output", output, "Output directory (overrides output_dir)");
  run->add_flag("--sweep", sweep, "Run several configs concurrently, one directory each");

  std::string center_config;
  bool use_grid = false;
  auto* center = app.add_subcommand("center", "Asymptotic center of a scenario's orbit tail");
  center->add_option("config", center_config, "Scenario file")->required();
  center->add_option("-o,--output", output, "Output directory");
  center->add_flag("--grid-oracle", use_grid, "Use the 2-D grid oracle (testing aid)");

  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  auto* ex34 = app.add_subcommand("verify-example34", "Reproduce the l2 counterexample verdicts");
  ex34->add_option("--samples", samples, "Sample pairs per check")->capture_default_str();
  ex34->add_option("--seed", seed, "RNG seed")->capture_default_str();
  ex34->add_option("-o,--output", output, "Output directory");

  std::string run_dir;
  auto* plot = app.add_subcommand("emit-plot-data", "Tabular series for external plotting");
  plot->add_option("run_dir", run_dir, "A completed run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fixpt::kExitError;
  }

  if (*run) {
    fixpt::RunOptions opts;
    opts.output_dir = output;
    if (!sweep) {
      if (configs.size() != 1) {
        std::cerr << "fixpt: ERROR: usage: several configs need --sweep\n";
        return fixpt::kExitError;
      }
      return report(fixpt::run_config_file(configs[0], opts), configs[0]);
    }
    const auto outcomes = fixpt::run_sweep(configs, opts);
    int worst = fixpt::kExitOk;
    bool error = false;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const int s = report(outcomes[i], configs[i]);
      error = error || s == fixpt::kExitError;
      worst = std::max(worst, s);
    }
    return error ? fixpt::kExitError : worst;
  }
  if (*center) {
    fixpt::RunOptions opts;
    opts.output_dir = output;
    opts.force_pipeline = fixpt::PipelineKind::CenterOnly;
    opts.grid_oracle = use_grid;
    return report(fixpt::run_config_file(center_config, opts), center_config);
  }
  if (*ex34) return report(fixpt::run_example34(samples, seed, output), "verify-example34");
  if (*plot) return report(fixpt::emit_plot_data(run_dir), run_dir);
  return fixpt::kExitError;
}
