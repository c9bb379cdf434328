#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fixpt/graphs.hpp"
#include "fixpt/maps.hpp"

namespace fixpt {

// Samplers, not provers: PASS means no counterexample turned up among the
// reported number of samples.

enum class Hypothesis {
  EdgePreservation,
  AsymptoticGNonexpansive,
  AsymptoticRegularity,
  GraphOfTInEdges,
  Continuity,
  OrderMonotone,
  // Conditions checked on a realized orbit by the pipelines.
  OrbitConsecutiveEdges,
  OrbitToLimitEdges,
  ReachabilitySeed,
  ReachabilityOrbit,
  LocalNonexpansive,
  ChainPushForward,
  RadiusGate,
};

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Hypothesis h);
const char* to_string(Verdict v);

/// Reproducible evidence for a FAIL: the inputs, the measured quantity and
/// the threshold it violated.
struct Witness {
  std::vector<Vector> points;
  double measured = 0.0;
  double threshold = 0.0;
  std::size_t index = 0;
  std::string description;
};

struct HypothesisReport {
  HypothesisReport() = default;
  explicit HypothesisReport(Hypothesis h) : hypothesis(h) {}

  Hypothesis hypothesis = Hypothesis::EdgePreservation;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  std::optional<AlphaSequence> empirical_alphas;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::string note;
};

/// Below this many samples a clean run is INCONCLUSIVE rather than PASS.
inline constexpr std::size_t kMinSamples = 10;

/// Pairs closer than this are skipped when forming Lipschitz ratios.
inline constexpr double kRatioSkip = 1e-9;

struct EdgePairs {
  std::vector<std::pair<Vector, Vector>> pairs;
  std::size_t attempts = 0;
  bool exhausted = false;  ///< acceptance fell below 1%
};

/// Rejection-samples `count` pairs of K joined by an edge of G, varying only
/// the first `active` coordinates. Proximity graphs propose y = x + r u with
/// r < eps; other graphs propose independent points of K.
EdgePairs sample_edge_pairs(const GraphSpec& graph, const ConvexSet& set, std::size_t count,
                            std::size_t active, Rng& rng,
                            const Comparator& order = componentwise_leq());

HypothesisReport check_edge_preservation(const MapInstance& map, const GraphSpec& graph,
                                         const ConvexSet& set, std::size_t pairs,
                                         std::uint64_t seed,
                                         const Comparator& order = componentwise_leq());

/// Per-step maxima of |T^i x - T^i y| / |x - y| and the pair attaining each.
struct AlphaEstimate {
  AlphaSequence alphas;
  std::vector<std::pair<Vector, Vector>> argmax;
  std::size_t pairs_used = 0;
};

AlphaEstimate estimate_alpha_on_pairs(const MapInstance& map,
                                      std::span<const std::pair<Vector, Vector>> pairs,
                                      std::size_t n_max);

AlphaEstimate estimate_alpha_detailed(const MapInstance& map, const GraphSpec& graph,
                                      const ConvexSet& set, std::size_t n_max,
                                      std::size_t pairs, std::uint64_t seed,
                                      const Comparator& order = componentwise_leq());

/// Lower bounds on the optimal alpha_1..alpha_{n_max}. Throws
/// ErrorKind::Inconclusive when no usable pair was drawn.
AlphaSequence estimate_alpha(const MapInstance& map, const GraphSpec& graph,
                             const ConvexSet& set, std::size_t n_max, std::size_t pairs,
                             std::uint64_t seed, const Comparator& order = componentwise_leq());

/// Majorant reading of asymptotic G-nonexpansiveness: PASS when the second
/// half of the estimated alphas stays within 1 + slack.
HypothesisReport assess_alpha(const AlphaEstimate& estimate, std::uint64_t seed,
                              double slack = 1e-9);

/// Asymptotic regularity from a residual trace g_n = |x_n - x_{n+1}|.
/// PASS: the last 10% dips below decay_tol. FAIL: the last 50% fits a positive
/// constant with relative rms residual < 1%. The fitted floor is the witness.
HypothesisReport assess_regularity(std::span<const double> residuals, const Vector& x0,
                                   double decay_tol);

HypothesisReport check_asymptotic_regularity(const MapInstance& map, const Vector& x0,
                                             std::size_t n_max, double decay_tol);

HypothesisReport check_graph_of_T_in_edges(const MapInstance& map, const GraphSpec& graph,
                                           const ConvexSet& set, std::size_t samples,
                                           std::uint64_t seed,
                                           const Comparator& order = componentwise_leq());

/// Sampled continuity modulus w(delta) = max |Tx - Ty| over pairs at distance
/// delta, for delta = 1e-1 .. 1e-6. PASS when w is nonincreasing and
/// w(1e-6) <= 1e-3.
HypothesisReport check_continuity(const MapInstance& map, const ConvexSet& set,
                                  std::size_t samples, std::uint64_t seed);

/// |Tx - Ty| <= |x - y| on sampled pairs with |x - y| < eps.
HypothesisReport check_local_nonexpansive(const MapInstance& map, const ConvexSet& set,
                                          double eps, std::size_t pairs, std::uint64_t seed);

/// x_0 <= T x_0 and x_n <= x_{n+1} along the computed orbit, checked at each
/// step. The note records whether the symmetric reading (the whole orbit
/// monotone in one direction) holds when the forward one does not.
HypothesisReport check_order_monotone_orbit(const MapInstance& map, const Vector& x0,
                                            const Comparator& order, std::size_t n_max);

}  // namespace fixpt
