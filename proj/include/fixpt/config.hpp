#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixpt/graphs.hpp"
#include "fixpt/maps.hpp"
#include "fixpt/orbit.hpp"

namespace fixpt {

enum class PipelineKind { T35, T37, C38, S4, VerifyOnly, CenterOnly };

const char* to_string(PipelineKind k);

/// One `key = value` line of a scenario file.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Parses the flat dotted-key format: `key = value`, `#` comments, blank
/// lines. Duplicate keys are rejected.
std::vector<ConfigEntry> parse_config_text(const std::string& text);

/// Reads a scenario file, or the `config` object of a report.json.
std::vector<ConfigEntry> read_config_file(const std::string& path);

struct ExperimentConfig {
  std::size_t dim = 16;
  double p = 2.0;
  ConvexSet set = ConvexSet::ball(Vector{0.0}, 1.0);
  GraphSpec graph = GraphSpec::full();
  MapKind map = Identity{};
  std::optional<PipelineKind> pipeline;
  Vector x0;
  PipelineConfig run;
  std::size_t L = 1;
  double eps = 0.0;
  std::string output_dir;

  /// Every effective setting as canonical strings, defaults filled in.
  /// output_dir is left out: it names where a run went, not what it was.
  std::map<std::string, std::string> echo;

  MapInstance make_map() const;
};

/// Validates every field; errors are ErrorKind::Config naming the key path.
ExperimentConfig build_config(const std::vector<ConfigEntry>& entries);

ExperimentConfig load_config(const std::string& path);

}  // namespace fixpt
