#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixpt/config.hpp"

namespace fixpt {

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitHypothesisFail = 2;
inline constexpr int kExitNoConvergence = 3;

int exit_status(PipelineOutcome o);

struct RunOptions {
  /// Replaces the config's output_dir.
  std::string output_dir;
  std::optional<PipelineKind> force_pipeline;
  /// CENTER_ONLY: solve with the 2-D grid oracle instead.
  bool grid_oracle = false;
};

struct RunOutcome {
  int exit_status = kExitError;
  std::string status;       ///< verdict name, or "ERROR"
  std::string reason;       ///< one line, empty when the status is clean
  std::string output_dir;
};

/// Output root: $FIXPT_OUTPUT_ROOT, else "fixpt_out".
std::string output_root();

/// Resolves where a run writes: the override, else output_dir (relative
/// paths under the output root), else <root>/<fallback_name>.
std::string resolve_output_dir(const std::string& override_dir, const std::string& configured,
                               const std::string& fallback_name);

/// Runs one experiment and writes report.json, orbit.csv and center.csv.
/// Never throws: errors come back as exit status 1 with a reason.
RunOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options,
                          const std::string& fallback_name = "run");

RunOutcome run_config_file(const std::string& path, const RunOptions& options);

/// Independent configs on concurrent workers, one output directory each.
std::vector<RunOutcome> run_sweep(const std::vector<std::string>& paths,
                                  const RunOptions& options);

RunOutcome run_example34(std::size_t samples, std::uint64_t seed, const std::string& out_dir);

/// Writes residual_decay.csv, alpha.csv and center_values.csv (whichever the
/// run supports) into <run_dir>/plot.
RunOutcome emit_plot_data(const std::string& run_dir);

}  // namespace fixpt
