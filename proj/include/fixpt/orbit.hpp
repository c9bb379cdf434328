#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixpt/center.hpp"
#include "fixpt/graphs.hpp"
#include "fixpt/maps.hpp"
#include "fixpt/verify.hpp"

namespace fixpt {

struct Orbit {
  Vector x0;
  std::vector<Vector> points;     ///< x_0 .. x_N
  std::vector<double> residuals;  ///< g_n = |x_n - x_{n+1}|, n < N
  std::string map_id;
  std::string graph_id;

  std::size_t steps() const noexcept { return residuals.size(); }
};

/// Picard iterates x_{n+1} = T x_n for n < N. The truncation budget is
/// checked once for the whole run.
Orbit run_orbit(const MapInstance& map, const Vector& x0, std::size_t n,
                const std::string& graph_id = "");

/// The last point when the final `window` points have pairwise distances
/// below tol_cauchy. Requires more than 2 * window points.
std::optional<Vector> detect_limit(const Orbit& orbit, double tol_cauchy, std::size_t window);

enum class Theorem { T35, T37, C38, S4 };
enum class PipelineOutcome { Certified, HypothesisFail, NoConvergence };

const char* to_string(Theorem t);
const char* to_string(PipelineOutcome o);

struct PipelineConfig {
  std::size_t iterations = 10000;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  double tol_fp = 1e-8;
  double tol_center = 1e-6;
  double tol_cauchy = 1e-10;
  std::size_t cauchy_window = 10;
  double decay_tol = 1e-8;
  std::size_t alpha_steps = 10;
  CenterOptions center;
};

struct PipelineVerdict {
  Theorem theorem = Theorem::T35;
  std::vector<HypothesisReport> reports;
  Orbit orbit;
  std::optional<Vector> limit;
  std::optional<double> fixed_point_residual;
  std::optional<double> center_match;
  std::optional<CenterResult> center;
  /// Eps-chain from x0 to T x0 (S4 only).
  std::optional<PathInK> chain;
  /// Reachability length used by T37 / C38, or the chain length for S4.
  std::optional<std::size_t> path_length;
  PipelineOutcome verdict = PipelineOutcome::NoConvergence;
  std::vector<std::string> notes;

  const HypothesisReport* find(Hypothesis h) const;
};

PipelineVerdict pipeline_T35(const MapInstance& map, const GraphSpec& graph,
                             const Vector& x0, const PipelineConfig& config = {});

/// Condition (b) is checked along the realized orbit; a FAIL witness's index
/// is the step n whose pair (x_{n-1}, x_n) is out of reach.
PipelineVerdict pipeline_T37(const MapInstance& map, const GraphSpec& graph,
                             const Vector& x0, std::size_t max_length,
                             const PipelineConfig& config = {});

/// Order graph (componentwise, 1e-12 slack), L = 1. Needs an order-compatible map.
PipelineVerdict pipeline_C38(const MapInstance& map, const Vector& x0,
                             const PipelineConfig& config = {});

PipelineVerdict pipeline_S4(const MapInstance& map, const Vector& x0, double eps,
                            const PipelineConfig& config = {});

}  // namespace fixpt
