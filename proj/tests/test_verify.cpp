#include <cmath>

#include <gtest/gtest.h>

#include "fixpt/verify.hpp"

using namespace fixpt;

namespace {

ConvexSet ball(std::size_t d, double r) { return ConvexSet::ball(Vector(d), r); }

MapInstance paper_map(std::size_t d, std::vector<double> b) {
  return MapInstance(PaperExample{std::move(b)},
                     ConvexSet::ball_plus_point(Vector(d), 0.5, Vector::unit(d, 0)));
}

}  // namespace

TEST(EdgePreservation, PaperExamplePasses) {
  const std::size_t d = 16;
  const auto f = paper_map(d, default_paper_coefficients(d));
  const auto r = check_edge_preservation(f, GraphSpec::proximity(0.5), ball(d, 0.5), 10000, 1);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.sample_count, 10000u);
}

TEST(EdgePreservation, IdentityPassesAnyGraph) {
  const MapInstance id(Identity{}, ball(3, 1.0));
  for (const auto& g : {GraphSpec::full(), GraphSpec::proximity(0.1), GraphSpec::order()}) {
    EXPECT_EQ(check_edge_preservation(id, g, ball(3, 1.0), 200, 2).verdict, Verdict::Pass);
  }
}

TEST(EdgePreservation, DoublingFailsWithReproducibleWitness) {
  const MapInstance dbl(Scaling{2.0}, ball(2, 1.0));
  // Pairs drawn inside a smaller ball so that 2x stays evaluable.
  const auto r = check_edge_preservation(dbl, GraphSpec::proximity(0.5), ball(2, 0.5), 500, 3);
  ASSERT_EQ(r.verdict, Verdict::Fail);
  ASSERT_TRUE(r.witness);
  const Vector& x = r.witness->points[0];
  const Vector& y = r.witness->points[1];
  EXPECT_LT(distance(x, y), 0.5);
  EXPECT_GE(distance(dbl.apply(x), dbl.apply(y)), 0.5);
  EXPECT_EQ(r.witness->measured, distance(dbl.apply(x), dbl.apply(y)));
}

TEST(EdgePreservation, ZeroPairsIsInconclusive) {
  const MapInstance id(Identity{}, ball(2, 1.0));
  EXPECT_EQ(check_edge_preservation(id, GraphSpec::full(), ball(2, 1.0), 0, 0).verdict,
            Verdict::Inconclusive);
}

TEST(EdgePreservation, SparseGraphIsInconclusive) {
  // Comparable pairs are rare in 16 dimensions.
  const MapInstance id(Identity{}, ball(16, 1.0));
  const auto r = check_edge_preservation(id, GraphSpec::order(), ball(16, 1.0), 100, 0);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Alpha, ContractionIsExact) {
  const MapInstance c(Contraction{0.5, Vector(3)}, ball(3, 1.0));
  const auto a = estimate_alpha(c, GraphSpec::full(), ball(3, 1.0), 8, 100, 4);
  ASSERT_EQ(a.values.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(a.values[i], std::ldexp(1.0, -static_cast<int>(i + 1)), 1e-10);
  }
}

TEST(Alpha, RotationOperatorNormPowers) {
  const MapInstance r(AveragedRotation{0.3}, ball(3, 1.0));
  const auto a = estimate_alpha(r, GraphSpec::full(), ball(3, 1.0), 5, 2000, 4);
  // The plane factor cos(theta/2) < 1 but the third axis is fixed: norm 1.
  for (double v : a.values) EXPECT_NEAR(v, 1.0, 1e-3);
  EXPECT_LE(a.values.back(), 1.0 + 1e-12);
}

TEST(Alpha, PaperEdgeBound) {
  const std::size_t d = 16;
  const auto b = default_paper_coefficients(d);
  const auto f = paper_map(d, b);
  const auto a = estimate_alpha(f, GraphSpec::proximity(0.5), ball(d, 0.5), 10, 10000, 5);
  double prod = 1.0;
  for (std::size_t i = 1; i <= 10; ++i) {
    if (i >= 2) prod *= b[i - 1];
    EXPECT_LE(a.values[i - 1], prod + 1e-9) << "i=" << i;
  }
}

TEST(Alpha, ExpCoefficientsBreakTheEdgeBound) {
  // With increasing b_n, x = t e_3 gives the ratio b_3 b_4 > b_2 at step 2.
  const std::size_t d = 16;
  const auto b = exp_paper_coefficients(d);
  const auto f = paper_map(d, b);
  const Vector x = Vector::unit(d, 2) * 0.2;
  const std::pair<Vector, Vector> pairs[] = {{x, Vector(d)}};
  const auto est = estimate_alpha_on_pairs(f, pairs, 2);
  EXPECT_NEAR(est.alphas.values[1], b[2] * b[3], 1e-15);
  EXPECT_GT(est.alphas.values[1], b[1] + 1e-3);
}

TEST(Alpha, PaperGlobalPairsExceedEdgeBound) {
  const std::size_t d = 16;
  const auto b = default_paper_coefficients(d);
  const auto f = paper_map(d, b);
  Rng rng(6);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int s = 0; s < 2000; ++s) {
    pairs.emplace_back(ball(d, 0.5).sample(rng, d - 10), Vector::unit(d, 0));
  }
  const auto est = estimate_alpha_on_pairs(f, pairs, 10);
  double prod = 1.0;
  bool exceeded = false;
  for (std::size_t i = 1; i <= 10; ++i) {
    if (i >= 2) prod *= b[i - 1];
    exceeded = exceeded || est.alphas.values[i - 1] > prod;
    EXPECT_LE(est.alphas.values[i - 1], 1.5 * prod + 1e-9);
  }
  EXPECT_TRUE(exceeded);
}

TEST(Alpha, LowerBoundGrowsWithSamples) {
  const MapInstance f = paper_map(8, default_paper_coefficients(8));
  Rng rng(2);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int s = 0; s < 400; ++s) {
    const Vector x = ball(8, 0.5).sample(rng, 4);
    pairs.emplace_back(x, ball(8, 0.5).sample(rng, 4));
  }
  const std::span<const std::pair<Vector, Vector>> all(pairs);
  const auto small = estimate_alpha_on_pairs(f, all.first(100), 4);
  const auto large = estimate_alpha_on_pairs(f, all, 4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_GE(large.alphas.values[i], small.alphas.values[i]);
}

TEST(Alpha, NoPairsIsInconclusive) {
  const MapInstance id(Identity{}, ball(2, 1.0));
  try {
    estimate_alpha(id, GraphSpec::full(), ball(2, 1.0), 3, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Inconclusive);
  }
}

TEST(Alpha, MajorantReading) {
  AlphaEstimate est;
  est.pairs_used = 50;
  est.alphas.values = {2.0, 1.5, 1.0, 0.9};
  est.argmax.resize(4);
  EXPECT_EQ(assess_alpha(est, 0).verdict, Verdict::Pass);
  est.alphas.values = {1.0, 1.0, 1.2, 1.1};
  const auto r = assess_alpha(est, 0);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_EQ(r.witness->index, 3u);
}

TEST(Regularity, Examples) {
  const MapInstance c(Contraction{0.5, Vector(2)}, ball(2, 1.0));
  EXPECT_EQ(check_asymptotic_regularity(c, Vector{1.0, 0.0}, 100, 1e-8).verdict, Verdict::Pass);

  const MapInstance rot(Rotation{0.3}, ball(2, 1.0));
  const auto r = check_asymptotic_regularity(rot, Vector{1.0, 0.0}, 2000, 1e-8);
  ASSERT_EQ(r.verdict, Verdict::Fail);
  EXPECT_NEAR(r.witness->measured, 2 * std::sin(0.15), 1e-12);

  const MapInstance avg(AveragedRotation{0.3}, ball(2, 1.0));
  EXPECT_EQ(check_asymptotic_regularity(avg, Vector{1.0, 0.0}, 3000, 1e-8).verdict,
            Verdict::Pass);
}

TEST(Regularity, SlowDecayIsInconclusive) {
  std::vector<double> g(200);
  for (std::size_t n = 0; n < g.size(); ++n) g[n] = 1.0 / (1.0 + n);
  EXPECT_EQ(assess_regularity(g, Vector{0.0}, 1e-8).verdict, Verdict::Inconclusive);
}

TEST(GraphOfT, Examples) {
  const MapInstance id(Identity{}, ball(2, 1.0));
  EXPECT_EQ(check_graph_of_T_in_edges(id, GraphSpec::proximity(0.01), ball(2, 1.0), 500, 1).verdict,
            Verdict::Pass);
  const MapInstance avg(AveragedRotation{0.3}, ball(4, 0.2));
  EXPECT_EQ(
      check_graph_of_T_in_edges(avg, GraphSpec::proximity(0.5), ball(4, 0.2), 2000, 1).verdict,
      Verdict::Pass);
  // Samples near the boundary of the unit ball move by about 1/2 >= 0.4.
  const MapInstance c(Contraction{0.5, Vector(2)}, ball(2, 1.0));
  const auto r = check_graph_of_T_in_edges(c, GraphSpec::proximity(0.4), ball(2, 1.0), 2000, 1);
  ASSERT_EQ(r.verdict, Verdict::Fail);
  EXPECT_GE(r.witness->measured, 0.4);
  EXPECT_GE(distance(r.witness->points[0], c.apply(r.witness->points[0])), 0.4);
}

TEST(Continuity, CatalogMapsPass) {
  const MapInstance avg(AveragedRotation{0.3}, ball(3, 0.5));
  EXPECT_EQ(check_continuity(avg, ball(3, 0.5), 200, 1).verdict, Verdict::Pass);
  const MapInstance f = paper_map(8, default_paper_coefficients(8));
  EXPECT_EQ(check_continuity(f, ball(8, 0.5), 200, 1).verdict, Verdict::Pass);
}

TEST(LocalNonexpansive, Examples) {
  const MapInstance avg(AveragedRotation{0.3}, ball(3, 0.5));
  EXPECT_EQ(check_local_nonexpansive(avg, ball(3, 0.5), 0.3, 1000, 1).verdict, Verdict::Pass);
  const MapInstance dbl(Scaling{2.0}, ball(2, 1.0));
  EXPECT_EQ(check_local_nonexpansive(dbl, ball(2, 0.5), 0.3, 100, 1).verdict, Verdict::Fail);
}

TEST(OrderMonotone, Examples) {
  const ConvexSet box = ConvexSet::box(Vector{0.0, 0.0}, Vector{3.0, 3.0});
  const MapInstance avg(MonotoneAverage{Vector{1.0, 1.0}}, box);
  const auto up = check_order_monotone_orbit(avg, Vector{0.0, 0.0}, componentwise_leq(), 50);
  EXPECT_EQ(up.verdict, Verdict::Pass);

  const auto down = check_order_monotone_orbit(avg, Vector{2.0, 2.0}, componentwise_leq(), 50);
  EXPECT_EQ(down.verdict, Verdict::Fail);
  EXPECT_EQ(down.witness->index, 0u);
  EXPECT_NE(down.note.find("symmetric passes"), std::string::npos);

  const MapInstance id(Identity{}, box);
  EXPECT_EQ(check_order_monotone_orbit(id, Vector{1.0, 2.0}, componentwise_leq(), 20).verdict,
            Verdict::Pass);
}

TEST(Determinism, SameSeedSameReport) {
  const std::size_t d = 16;
  const auto f = paper_map(d, default_paper_coefficients(d));
  const auto a = estimate_alpha(f, GraphSpec::proximity(0.5), ball(d, 0.5), 10, 3000, 77);
  const auto b = estimate_alpha(f, GraphSpec::proximity(0.5), ball(d, 0.5), 10, 3000, 77);
  EXPECT_EQ(a.values, b.values);
  const MapInstance dbl(Scaling{2.0}, ball(2, 1.0));
  const auto r1 = check_edge_preservation(dbl, GraphSpec::proximity(0.5), ball(2, 0.5), 500, 9);
  const auto r2 = check_edge_preservation(dbl, GraphSpec::proximity(0.5), ball(2, 0.5), 500, 9);
  EXPECT_EQ(r1.witness->points, r2.witness->points);
  EXPECT_EQ(r1.witness->index, r2.witness->index);
}
