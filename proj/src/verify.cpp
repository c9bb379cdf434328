#include "fixpt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace fixpt {

const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::EdgePreservation: return "EdgePreservation";
    case Hypothesis::AsymptoticGNonexpansive: return "AsymptoticGNonexpansive";
    case Hypothesis::AsymptoticRegularity: return "AsymptoticRegularity";
    case Hypothesis::GraphOfTInEdges: return "GraphOfTInEdges";
    case Hypothesis::Continuity: return "Continuity";
    case Hypothesis::OrderMonotone: return "OrderMonotone";
    case Hypothesis::OrbitConsecutiveEdges: return "OrbitConsecutiveEdges";
    case Hypothesis::OrbitToLimitEdges: return "OrbitToLimitEdges";
    case Hypothesis::ReachabilitySeed: return "ReachabilitySeed";
    case Hypothesis::ReachabilityOrbit: return "ReachabilityOrbit";
    case Hypothesis::LocalNonexpansive: return "LocalNonexpansive";
    case Hypothesis::ChainPushForward: return "ChainPushForward";
    case Hypothesis::RadiusGate: return "RadiusGate";
  }
  return "Unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

namespace {

Verdict clean_verdict(std::size_t samples) {
  return samples >= kMinSamples ? Verdict::Pass : Verdict::Inconclusive;
}

bool is_isolated_point(const ConvexSet& set, const Vector& x) {
  const auto* bp = std::get_if<BallPlusPoint>(&set.shape());
  return bp && x == bp->extra;
}

// Orbit x_0..x_n by the raw formula; the caller has checked x0 and the budget.
std::vector<Vector> trace(const MapInstance& map, const Vector& x0, std::size_t n) {
  std::vector<Vector> out;
  out.reserve(n + 1);
  out.push_back(x0);
  std::vector<double> a(x0.coords().begin(), x0.coords().end());
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < n; ++k) {
    map.apply_into(a, b);
    a.swap(b);
    out.emplace_back(a);
  }
  return out;
}

}  // namespace

EdgePairs sample_edge_pairs(const GraphSpec& graph, const ConvexSet& set, std::size_t count,
                            std::size_t active, Rng& rng, const Comparator& order) {
  EdgePairs out;
  out.pairs.reserve(count);
  const std::size_t max_attempts = 100 * std::max<std::size_t>(count, 1);
  while (out.pairs.size() < count) {
    if (out.attempts >= max_attempts) {
      out.exhausted = true;
      break;
    }
    ++out.attempts;
    Vector x = set.sample(rng, active);
    Vector y = graph.is_proximity()
                   ? x + rng.direction(set.dim(), active) * (graph.eps() * rng.uniform())
                   : set.sample(rng, active);
    if (!set.contains(y) || !has_edge(graph, x, y, order)) continue;
    out.pairs.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

HypothesisReport check_edge_preservation(const MapInstance& map, const GraphSpec& graph,
                                         const ConvexSet& set, std::size_t pairs,
                                         std::uint64_t seed, const Comparator& order) {
  HypothesisReport report{Hypothesis::EdgePreservation};
  report.seed = seed;
  Rng rng(seed);
  const EdgePairs draw = sample_edge_pairs(graph, set, pairs, map.support_budget(1), rng, order);
  report.sample_count = draw.pairs.size();
  for (std::size_t k = 0; k < draw.pairs.size(); ++k) {
    const auto& [x, y] = draw.pairs[k];
    const Vector tx = map.apply(x);
    const Vector ty = map.apply(y);
    if (!has_edge(graph, tx, ty, order)) {
      report.verdict = Verdict::Fail;
      report.witness = Witness{{x, y, tx, ty}, distance(tx, ty),
                               graph.is_proximity() ? graph.eps() : 0.0, k,
                               "(T x, T y) is not an edge"};
      return report;
    }
  }
  if (draw.exhausted) {
    report.verdict = Verdict::Inconclusive;
    report.note = "edge-pair rejection sampling accepted fewer than 1% of proposals";
    return report;
  }
  report.verdict = clean_verdict(report.sample_count);
  return report;
}

AlphaEstimate estimate_alpha_on_pairs(const MapInstance& map,
                                      std::span<const std::pair<Vector, Vector>> pairs,
                                      std::size_t n_max) {
  AlphaEstimate est;
  est.alphas.values.assign(n_max, 0.0);
  est.argmax.resize(n_max);
  const std::size_t d = map.dim();
  std::vector<double> a(d), b(d), ta(d), tb(d);
  for (const auto& [x, y] : pairs) {
    const double base = distance(x, y);
    if (base < kRatioSkip) continue;
    // Same budget rule as MapInstance::iterate.
    const std::size_t budget = map.support_budget(n_max);
    if (x.support_end() > budget || y.support_end() > budget) {
      throw Error(ErrorKind::Truncation, "alpha estimation pair exceeds the truncation budget");
    }
    ++est.pairs_used;
    std::copy(x.coords().begin(), x.coords().end(), a.begin());
    std::copy(y.coords().begin(), y.coords().end(), b.begin());
    for (std::size_t i = 0; i < n_max; ++i) {
      map.apply_into(a, ta);
      map.apply_into(b, tb);
      a.swap(ta);
      b.swap(tb);
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
      const double ratio = std::sqrt(s) / base;
      if (ratio > est.alphas.values[i] || est.pairs_used == 1) {
        est.alphas.values[i] = ratio;
        est.argmax[i] = {x, y};
      }
    }
  }
  if (est.pairs_used == 0) {
    est.alphas.values.clear();
    est.argmax.clear();
  }
  return est;
}

AlphaEstimate estimate_alpha_detailed(const MapInstance& map, const GraphSpec& graph,
                                      const ConvexSet& set, std::size_t n_max,
                                      std::size_t pairs, std::uint64_t seed,
                                      const Comparator& order) {
  Rng rng(seed);
  const EdgePairs draw =
      sample_edge_pairs(graph, set, pairs, map.support_budget(n_max), rng, order);
  return estimate_alpha_on_pairs(map, draw.pairs, n_max);
}

AlphaSequence estimate_alpha(const MapInstance& map, const GraphSpec& graph,
                             const ConvexSet& set, std::size_t n_max, std::size_t pairs,
                             std::uint64_t seed, const Comparator& order) {
  AlphaEstimate est = estimate_alpha_detailed(map, graph, set, n_max, pairs, seed, order);
  if (est.pairs_used == 0) {
    throw Error(ErrorKind::Inconclusive, "no usable edge pairs for alpha estimation");
  }
  return est.alphas;
}

HypothesisReport assess_alpha(const AlphaEstimate& estimate, std::uint64_t seed,
                              double slack) {
  HypothesisReport report{Hypothesis::AsymptoticGNonexpansive};
  report.seed = seed;
  report.sample_count = estimate.pairs_used;
  report.note =
      "majorant reading: the constant sequence 1 bounds the tail of the sampled ratios";
  if (estimate.pairs_used == 0) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  report.empirical_alphas = estimate.alphas;
  const auto& v = estimate.alphas.values;
  for (std::size_t i = v.size() / 2; i < v.size(); ++i) {
    if (v[i] > 1.0 + slack) {
      report.verdict = Verdict::Fail;
      const auto& [x, y] = estimate.argmax[i];
      report.witness = Witness{{x, y}, v[i], 1.0 + slack, i + 1,
                               "|T^i x - T^i y| / |x - y| exceeds the majorant at step i"};
      return report;
    }
  }
  report.verdict = clean_verdict(report.sample_count);
  return report;
}

HypothesisReport assess_regularity(std::span<const double> g, const Vector& x0,
                                   double decay_tol) {
  HypothesisReport report{Hypothesis::AsymptoticRegularity};
  report.sample_count = g.size();
  if (g.empty()) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  const std::size_t n = g.size();
  const std::size_t last10 = std::max<std::size_t>(1, n / 10);
  const double tail_min = *std::min_element(g.end() - static_cast<std::ptrdiff_t>(last10), g.end());
  if (tail_min < decay_tol) {
    report.verdict = clean_verdict(n);
    std::ostringstream os;
    os.precision(6);
    os << "min residual over the last 10% = " << tail_min;
    report.note = os.str();
    return report;
  }

  const std::size_t half = std::max<std::size_t>(1, n / 2);
  const auto tail = g.subspan(n - half);
  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= static_cast<double>(tail.size());
  double ss = 0.0;
  for (double v : tail) ss += (v - mean) * (v - mean);
  const double rel = std::sqrt(ss / static_cast<double>(tail.size())) / mean;

  if (mean > 0.0 && rel < 0.01) {
    report.verdict = Verdict::Fail;
    report.witness = Witness{{x0}, mean, decay_tol, n - half,
                             "residuals |x_n - x_{n+1}| settle on a positive floor"};
    std::ostringstream os;
    os.precision(6);
    os << "constant fit over the last 50%: floor " << mean << ", relative rms " << rel;
    report.note = os.str();
    return report;
  }
  report.verdict = Verdict::Inconclusive;
  report.note = "residuals neither decayed below the tolerance nor settled on a floor";
  return report;
}

HypothesisReport check_asymptotic_regularity(const MapInstance& map, const Vector& x0,
                                             std::size_t n_max, double decay_tol) {
  // Validates x0 and the truncation budget for n_max + 1 steps.
  (void)map.iterate(x0, 0);
  if (x0.support_end() > map.support_budget(n_max + 1)) {
    throw Error(ErrorKind::Truncation, "regularity check exceeds the truncation budget");
  }
  const std::vector<Vector> pts = trace(map, x0, n_max + 1);
  std::vector<double> g(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k) g[k] = distance(pts[k], pts[k + 1]);
  return assess_regularity(g, x0, decay_tol);
}

HypothesisReport check_graph_of_T_in_edges(const MapInstance& map, const GraphSpec& graph,
                                           const ConvexSet& set, std::size_t samples,
                                           std::uint64_t seed, const Comparator& order) {
  HypothesisReport report{Hypothesis::GraphOfTInEdges};
  report.seed = seed;
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector x = set.sample(rng, map.support_budget(1));
    ++report.sample_count;
    if (is_isolated_point(set, x)) continue;
    const Vector tx = map.apply(x);
    if (!has_edge(graph, x, tx, order)) {
      report.verdict = Verdict::Fail;
      report.witness = Witness{{x, tx}, distance(x, tx),
                               graph.is_proximity() ? graph.eps() : 0.0, k,
                               "(x, T x) is not an edge"};
      return report;
    }
  }
  report.verdict = clean_verdict(report.sample_count);
  return report;
}

HypothesisReport check_continuity(const MapInstance& map, const ConvexSet& set,
                                  std::size_t samples, std::uint64_t seed) {
  HypothesisReport report{Hypothesis::Continuity};
  report.seed = seed;
  Rng rng(seed);
  const std::size_t active = map.support_budget(1);
  double previous = std::numeric_limits<double>::infinity();
  std::optional<Witness> smallest_worst;
  std::ostringstream note;
  note.precision(3);
  note << "modulus";
  double delta = 1e-1;
  for (int level = 0; level < 6; ++level, delta /= 10.0) {
    double worst = 0.0;
    std::optional<Witness> worst_pair;
    for (std::size_t k = 0; k < samples; ++k) {
      const Vector x = set.sample(rng, active);
      const Vector u = rng.direction(set.dim(), active);
      if (is_isolated_point(set, x)) continue;
      Vector y = x + u * delta;
      if (!set.contains(y)) y = x - u * delta;
      if (!set.contains(y) || is_isolated_point(set, y)) continue;
      ++report.sample_count;
      const double gap = distance(map.apply(x), map.apply(y));
      if (gap > worst || !worst_pair) {
        worst = gap;
        worst_pair = Witness{{x, y}, gap, 0.0, static_cast<std::size_t>(level),
                             "largest |Tx - Ty| at this pair distance"};
      }
    }
    note << " w(" << delta << ")=" << worst;
    if (worst > previous + 1e-12) {
      report.verdict = Verdict::Fail;
      worst_pair->threshold = previous;
      worst_pair->description = "continuity modulus grew as the pair distance shrank";
      report.witness = worst_pair;
      report.note = note.str();
      return report;
    }
    previous = worst;
    smallest_worst = worst_pair;
  }
  report.note = note.str();
  if (smallest_worst && previous > 1e-3) {
    report.verdict = Verdict::Fail;
    smallest_worst->threshold = 1e-3;
    smallest_worst->description = "continuity modulus at distance 1e-6 exceeds 1e-3";
    report.witness = smallest_worst;
    return report;
  }
  report.verdict = clean_verdict(report.sample_count);
  return report;
}

HypothesisReport check_local_nonexpansive(const MapInstance& map, const ConvexSet& set,
                                          double eps, std::size_t pairs, std::uint64_t seed) {
  HypothesisReport report{Hypothesis::LocalNonexpansive};
  report.seed = seed;
  Rng rng(seed);
  const EdgePairs draw =
      sample_edge_pairs(GraphSpec::proximity(eps), set, pairs, map.support_budget(1), rng);
  report.sample_count = draw.pairs.size();
  for (std::size_t k = 0; k < draw.pairs.size(); ++k) {
    const auto& [x, y] = draw.pairs[k];
    const double before = distance(x, y);
    const double after = distance(map.apply(x), map.apply(y));
    if (after > before + 1e-12) {
      report.verdict = Verdict::Fail;
      report.witness = Witness{{x, y}, after, before, k, "|Tx - Ty| > |x - y| on an eps-close pair"};
      return report;
    }
  }
  if (draw.exhausted) {
    report.verdict = Verdict::Inconclusive;
    report.note = "eps-close pair sampling accepted fewer than 1% of proposals";
    return report;
  }
  report.verdict = clean_verdict(report.sample_count);
  return report;
}

HypothesisReport check_order_monotone_orbit(const MapInstance& map, const Vector& x0,
                                            const Comparator& order, std::size_t n_max) {
  HypothesisReport report{Hypothesis::OrderMonotone};
  (void)map.iterate(x0, 0);
  if (x0.support_end() > map.support_budget(n_max)) {
    throw Error(ErrorKind::Truncation, "order check exceeds the truncation budget");
  }
  const std::vector<Vector> pts = trace(map, x0, std::max<std::size_t>(n_max, 1));
  report.sample_count = pts.size() - 1;

  std::optional<std::size_t> forward_break;
  std::optional<std::size_t> reverse_break;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (!forward_break && !order(pts[k], pts[k + 1])) forward_break = k;
    if (!reverse_break && !order(pts[k + 1], pts[k])) reverse_break = k;
  }
  if (!forward_break) {
    report.verdict = Verdict::Pass;
    report.note = "reading: forward (x_n <= x_{n+1} at every step)";
    return report;
  }
  report.verdict = Verdict::Fail;
  const std::size_t k = *forward_break;
  report.witness = Witness{{pts[k], pts[k + 1]}, 0.0, 0.0, k,
                           k == 0 ? "seed condition x_0 <= T x_0 fails"
                                  : "x_n <= x_{n+1} fails at step n"};
  report.note = reverse_break ? "reading: none (forward and reverse both break)"
                              : "reading: symmetric passes (x_{n+1} <= x_n at every step); "
                                "forward fails";
  return report;
}

}  // namespace fixpt
