#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fixpt/vecspace.hpp"

namespace fixpt {

/// Inclusive index range [start, end] of a sequence standing in for its tail
/// when approximating limsup_n |x_n - y| by a maximum.
struct TailWindow {
  std::size_t start = 0;
  std::size_t end = 0;

  TailWindow() = default;
  TailWindow(std::size_t start, std::size_t end);

  /// The last half of a sequence of `length` points.
  static TailWindow last_half(std::size_t length);

  std::size_t size() const noexcept { return end - start + 1; }
};

/// max over the window of |x_n - y|.
double radius_at(std::span<const Vector> seq, const TailWindow& window, const Vector& y);

enum class CenterSolver { ProjectedSubgradient, CoreSetMEB, GridOracle };

const char* to_string(CenterSolver solver);

struct CenterResult {
  Vector center;
  double radius = 0.0;
  CenterSolver solver = CenterSolver::ProjectedSubgradient;
  std::size_t iterations = 0;
  TailWindow window;
  /// Largest decrease of the objective found by probing +-tol along each
  /// axis from the center; zero when the certificate holds.
  double residual = 0.0;
  /// Best objective value after each iteration.
  std::vector<double> trajectory;
};

struct CenterOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100000;
  /// Stop once the value improved by less than tol/1000 over this many iterations.
  std::size_t stall_window = 50;
};

/// Minimizes F(y) = max_{n in window} |x_n - y| over a convex K by projected
/// descent: steepest direction of the near-active subgradients, then a
/// line search along the projected ray.
CenterResult asymptotic_center(std::span<const Vector> seq, const TailWindow& window,
                               const ConvexSet& set, const CenterOptions& options = {});

/// Unconstrained minimum enclosing ball of the window points by core-set
/// Frank-Wolfe iteration: step toward the farthest point (with away steps from
/// the nearest support point), weights by exact line search.
CenterResult core_set_meb(std::span<const Vector> seq, const TailWindow& window,
                          double tol = 1e-8, std::size_t max_iter = 1000000);

/// Two-dimensional exhaustive search at `resolution` over K's bounding box,
/// then repeated zoomed grids around the incumbent, then the pair midpoints
/// and circumcenters of the window that lie in K. Test oracle only.
CenterResult grid_oracle(std::span<const Vector> seq, const TailWindow& window,
                         const ConvexSet& set, double resolution = 1e-3);

/// Probes +-step along every coordinate axis and returns the largest decrease
/// of F found (0 if none).
double optimality_gap(std::span<const Vector> seq, const TailWindow& window,
                      const ConvexSet& set, const Vector& center, double step);

struct MinimizingSequenceCheck {
  std::vector<double> scales;
  std::vector<Vector> points;
  std::vector<double> radii;       ///< r(z_k)
  std::vector<double> radius_gaps; ///< r(z_k) - rho
  std::vector<double> distances;   ///< |z_k - z|
  bool gaps_bounded = true;        ///< r(z_k) - rho <= delta_k + 1e-12
  bool distances_bounded = true;   ///< |z_k - z| <= delta_k + 1e-12
  bool monotone = true;            ///< both sequences nonincreasing up to 1e-9

  bool ok() const noexcept { return gaps_bounded && distances_bounded && monotone; }
};

/// Perturbs the computed center along one seeded unit direction u,
/// z_k = P_K(z + delta_k u), and checks that r(z_k) -> rho and z_k -> z.
MinimizingSequenceCheck minimizing_sequence_check(std::span<const Vector> seq,
                                                  const TailWindow& window,
                                                  const ConvexSet& set,
                                                  const CenterResult& result,
                                                  std::span<const double> scales,
                                                  std::uint64_t seed = 0);

}  // namespace fixpt
