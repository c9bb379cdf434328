#include <cmath>

#include <gtest/gtest.h>

#include "fixpt/graphs.hpp"

using namespace fixpt;

TEST(HasEdge, Examples) {
  const GraphSpec g = GraphSpec::proximity(0.5);
  EXPECT_TRUE(has_edge(g, Vector{0.0, 0.0}, Vector{0.4, 0.0}));
  EXPECT_FALSE(has_edge(g, Vector{0.0, 0.0}, Vector{0.6, 0.0}));
  EXPECT_FALSE(has_edge(g, Vector{0.0, 0.0}, Vector{0.5, 0.0}));  // strict
  for (const GraphSpec& k : {GraphSpec::full(), g, GraphSpec::order()}) {
    EXPECT_TRUE(has_edge(k, Vector{0.3, 0.7}, Vector{0.3, 0.7}));
  }
  EXPECT_TRUE(has_edge(GraphSpec::order(), Vector{1.0, 2.0}, Vector{0.0, 0.0}));
  EXPECT_FALSE(has_edge(GraphSpec::order(), Vector{1.0, 0.0}, Vector{0.0, 1.0}));
  EXPECT_THROW(GraphSpec::proximity(0.0), Error);
}

TEST(HasEdge, DiagonalAndSymmetry) {
  Rng rng(1);
  const GraphSpec gs[] = {GraphSpec::full(), GraphSpec::proximity(0.3), GraphSpec::order()};
  for (int s = 0; s < 1000; ++s) {
    const Vector y = rng.direction(4, 4) * rng.uniform(0, 2);
    const Vector x = rng.direction(4, 4) * rng.uniform(0, 2);
    for (const auto& g : gs) {
      EXPECT_TRUE(has_edge(g, y, y));
      EXPECT_EQ(has_edge(g, x, y), has_edge(g, y, x));
    }
  }
}

TEST(ChainPath, Examples) {
  const ConvexSet k = ConvexSet::ball(Vector(2), 2.0);
  const GraphSpec g = GraphSpec::proximity(0.5);
  const PathInK p = chain_path(Vector{0.0, 0.0}, Vector{1.2, 0.0}, k, g);
  ASSERT_EQ(p.length(), 3u);
  EXPECT_NEAR(p.nodes[1][0], 0.4, 1e-15);
  EXPECT_NEAR(p.nodes[2][0], 0.8, 1e-15);
  EXPECT_EQ(p.nodes[3], (Vector{1.2, 0.0}));

  const PathInK same = chain_path(Vector{0.1, 0.1}, Vector{0.1, 0.1}, k, g);
  EXPECT_EQ(same.length(), 1u);
  EXPECT_EQ(same.nodes[0], same.nodes[1]);
  EXPECT_EQ(chain_path(Vector{0.0, 0.0}, Vector{0.3, 0.0}, k, g).length(), 1u);
}

TEST(ChainPath, Errors) {
  const ConvexSet k = ConvexSet::ball(Vector(2), 1.0);
  try {
    chain_path(Vector{0.0, 0.0}, Vector{3.0, 0.0}, k, GraphSpec::proximity(0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
  EXPECT_THROW(chain_path(Vector{0.0, 0.0}, Vector{0.5, 0.0}, k, GraphSpec::full()), Error);
  const ConvexSet bp = ConvexSet::ball_plus_point(Vector(2), 0.5, Vector{1.0, 0.0});
  EXPECT_THROW(chain_path(Vector{0.0, 0.0}, Vector{0.1, 0.0}, bp, GraphSpec::proximity(0.5)),
               Error);
}

TEST(ChainPath, PathInvariantsOnSamples) {
  Rng rng(9);
  const ConvexSet k = ConvexSet::ball(Vector(3), 1.5);
  for (double eps : {0.05, 0.3, 1.0}) {
    const GraphSpec g = GraphSpec::proximity(eps);
    for (int s = 0; s < 300; ++s) {
      const Vector x = k.sample(rng), y = k.sample(rng);
      const PathInK p = chain_path(x, y, k, g);
      EXPECT_EQ(p.length(), static_cast<std::size_t>(std::floor(distance(x, y) / eps)) + 1);
      EXPECT_EQ(p.nodes.front(), x);
      EXPECT_EQ(p.nodes.back(), y);
      for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        EXPECT_TRUE(k.contains(p.nodes[i]));
        EXPECT_TRUE(has_edge(g, p.nodes[i], p.nodes[i + 1]));
      }
      // Proximity consistency: an edge iff the chain has one segment.
      EXPECT_EQ(has_edge(g, x, y), p.length() == 1);
    }
  }
}

TEST(Reachability, Examples) {
  const ConvexSet k = ConvexSet::ball(Vector(2), 3.0);
  const GraphSpec g = GraphSpec::proximity(0.5);
  const Vector x0{0.0, 0.0};
  const Vector y{1.2, 0.0};
  EXPECT_TRUE(in_reachability_class(x0, y, GraphSpec::full(), k, 1));
  EXPECT_TRUE(in_reachability_class(x0, y, g, k, 3));
  EXPECT_FALSE(in_reachability_class(x0, y, g, k, 2));
  EXPECT_TRUE(in_reachability_class(x0, Vector{1.0, 2.0}, GraphSpec::order(), k, 1));
  EXPECT_FALSE(in_reachability_class(Vector{1.0, 0.0}, Vector{0.0, 1.0}, GraphSpec::order(), k, 5));
}
