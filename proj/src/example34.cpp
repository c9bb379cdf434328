#include "fixpt/example34.hpp"

#include <algorithm>
#include <cmath>

namespace fixpt {

namespace {

constexpr double kBoundSlack = 1e-9;

Verdict clean(std::size_t samples) {
  return samples >= kMinSamples ? Verdict::Pass : Verdict::Inconclusive;
}

}  // namespace

Example34Report verify_example34(std::size_t samples, std::uint64_t seed, std::size_t dim,
                                 std::size_t steps) {
  Example34Report rep;
  rep.dim = dim;
  rep.samples = samples;
  rep.seed = seed;
  rep.b = default_paper_coefficients(dim);

  const Vector e1 = Vector::unit(dim, 0);
  const ConvexSet half = ConvexSet::ball(Vector(dim), 0.5);
  const MapInstance map(PaperExample{rep.b}, ConvexSet::ball_plus_point(Vector(dim), 0.5, e1));
  const GraphSpec graph = GraphSpec::proximity(0.5);
  const std::size_t budget = map.support_budget(steps);

  // prod[i] = b_2 ... b_i, the empty product for i = 1.
  std::vector<double> prod(steps + 1, 1.0);
  for (std::size_t i = 2; i <= steps; ++i) prod[i] = prod[i - 1] * rep.b[i - 1];

  rep.edge_preservation = check_edge_preservation(map, graph, half, samples, seed);
  rep.nonexpansive = check_local_nonexpansive(map, half, 0.5, samples, seed);
  rep.nonexpansive.note = "pairs of the half ball with |x - y| < 1/2";

  Rng edge_rng(seed + 1);
  const EdgePairs edges = sample_edge_pairs(graph, half, samples, budget, edge_rng);
  const AlphaEstimate est = estimate_alpha_on_pairs(map, edges.pairs, steps);

  // Full-graph pairs: every other pair has y = e_1.
  Rng global_rng(seed + 2);
  std::vector<std::pair<Vector, Vector>> global;
  global.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    Vector x = half.sample(global_rng, budget);
    Vector y = k % 2 == 0 ? e1 : half.sample(global_rng, budget);
    global.emplace_back(std::move(x), std::move(y));
  }
  const AlphaEstimate gest = estimate_alpha_on_pairs(map, global, steps);

  rep.edge_bound = HypothesisReport{Hypothesis::AsymptoticGNonexpansive};
  rep.edge_bound.seed = seed + 1;
  rep.edge_bound.sample_count = est.pairs_used;
  rep.edge_bound.note = "alpha_hat_i <= prod_{n=2}^i b_n on proximity edges in the half ball";
  rep.global_bound = HypothesisReport{Hypothesis::AsymptoticGNonexpansive};
  rep.global_bound.seed = seed + 2;
  rep.global_bound.sample_count = gest.pairs_used;
  rep.global_bound.note =
      "full-graph pairs, half of them with y = e_1: ratios <= (3/2) prod_{n=2}^i b_n";

  if (est.pairs_used > 0) rep.edge_bound.empirical_alphas = est.alphas;
  if (gest.pairs_used > 0) rep.global_bound.empirical_alphas = gest.alphas;

  for (std::size_t i = 1; i <= steps; ++i) {
    Example34Row row;
    row.i = i;
    row.edge_bound = prod[i];
    row.global_bound = 1.5 * prod[i];
    if (est.pairs_used > 0) {
      row.alpha_hat = est.alphas.values[i - 1];
      if (row.alpha_hat > row.edge_bound + kBoundSlack && !rep.edge_bound.witness) {
        const auto& [x, y] = est.argmax[i - 1];
        rep.edge_bound.witness = Witness{{x, y}, row.alpha_hat, row.edge_bound, i,
                                         "i-step ratio on an edge exceeds prod b_n"};
      }
    }
    if (gest.pairs_used > 0) {
      row.global_ratio = gest.alphas.values[i - 1];
      if (row.global_ratio > row.edge_bound + kBoundSlack) ++rep.exceed_count;
      if (row.global_ratio > row.global_bound + kBoundSlack && !rep.global_bound.witness) {
        const auto& [x, y] = gest.argmax[i - 1];
        rep.global_bound.witness = Witness{{x, y}, row.global_ratio, row.global_bound, i,
                                           "i-step ratio exceeds (3/2) prod b_n"};
      }
    }
    if (est.pairs_used > 0 || gest.pairs_used > 0) rep.table.push_back(row);
  }
  rep.edge_bound.verdict =
      rep.edge_bound.witness ? Verdict::Fail : clean(rep.edge_bound.sample_count);
  rep.global_bound.verdict =
      rep.global_bound.witness ? Verdict::Fail : clean(rep.global_bound.sample_count);

  const HypothesisReport* all[] = {&rep.edge_preservation, &rep.nonexpansive, &rep.edge_bound,
                                   &rep.global_bound};
  if (std::any_of(std::begin(all), std::end(all),
                  [](const auto* r) { return r->verdict == Verdict::Fail; })) {
    rep.overall = Verdict::Fail;
  } else if (std::all_of(std::begin(all), std::end(all),
                         [](const auto* r) { return r->verdict == Verdict::Pass; })) {
    rep.overall = Verdict::Pass;
  } else {
    rep.overall = Verdict::Inconclusive;
  }

  rep.notes.push_back(
      "coefficients b_n = 1/2 + 2^-n: strictly decreasing in (1/2,1), so prod b_n tends to 0 "
      "and the claim lim alpha_i != 1 concerns this bound sequence");
  rep.notes.push_back(
      "majorant reading: the constant sequence 1 also bounds the edge ratios, so the map is "
      "asymptotically G-nonexpansive on edges while not asymptotically nonexpansive globally");
  rep.notes.push_back("f(e_1) = e_2 lies outside K; iterates of e_1 use the formula only");
  return rep;
}

}  // namespace fixpt
