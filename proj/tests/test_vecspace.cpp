#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fixpt/vecspace.hpp"

using namespace fixpt;

TEST(Vector, RejectsNonFinite) {
  EXPECT_THROW(Vector({1.0, std::numeric_limits<double>::quiet_NaN()}), Error);
  EXPECT_THROW(Vector({std::numeric_limits<double>::infinity()}), Error);
}

TEST(Vector, DimensionMismatchIsStructural) {
  try {
    (void)(Vector{1.0, 2.0} + Vector{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  EXPECT_THROW(distance(Vector{1.0}, Vector{1.0, 0.0}), Error);
}

TEST(Vector, PaddedAndSupport) {
  const std::vector<double> c{0.4, 0.1};
  const Vector v = Vector::padded(c, 5);
  EXPECT_EQ(v.dim(), 5u);
  EXPECT_EQ(v[4], 0.0);
  EXPECT_EQ(v.support_end(), 2u);
  EXPECT_EQ(Vector(3).support_end(), 0u);
  EXPECT_THROW(Vector::padded(c, 1), Error);
}

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(norm(Vector{3.0, 4.0}), 5.0);
  EXPECT_EQ(norm(Vector(7), NormTag(3.0)), 0.0);
  EXPECT_DOUBLE_EQ(norm(Vector{1.0, 1.0, 1.0, 1.0}), 2.0);
  EXPECT_NEAR(norm(Vector{1.0, 1.0}, NormTag(4.0)), std::pow(2.0, 0.25), 1e-15);
}

TEST(NormTag, RejectsOutOfRange) {
  EXPECT_THROW(NormTag(1.0), Error);
  EXPECT_THROW(NormTag(std::numeric_limits<double>::infinity()), Error);
  EXPECT_NO_THROW(NormTag(1.5));
}

TEST(Norm, AxiomsOnSampledTriples) {
  Rng rng(11);
  for (double p : {1.5, 2.0, 3.0}) {
    const NormTag tag(p);
    for (int k = 0; k < 500; ++k) {
      Vector x(6), y(6);
      for (std::size_t i = 0; i < 6; ++i) {
        x = x.with(i, rng.uniform(-3, 3));
        y = y.with(i, rng.uniform(-3, 3));
      }
      const double lambda = rng.uniform(-5, 5);
      const double nx = norm(x, tag), ny = norm(y, tag);
      EXPECT_LE(norm(x + y, tag), (nx + ny) * (1 + 1e-12));
      EXPECT_NEAR(norm(x * lambda, tag), std::abs(lambda) * nx, 1e-12 * (1 + std::abs(lambda) * nx));
    }
  }
}

TEST(Project, Examples) {
  const ConvexSet half = ConvexSet::ball(Vector(2), 0.5);
  const Vector p = project(Vector{1.0, 1.0}, half);
  EXPECT_NEAR(p[0], 0.5 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p[1], 0.5 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(project(Vector{0.1, 0.0}, half), (Vector{0.1, 0.0}));
  const ConvexSet box = ConvexSet::box(Vector{0.0, 0.0}, Vector{1.0, 1.0});
  EXPECT_EQ(project(Vector{2.0, -1.0}, box), (Vector{1.0, 0.0}));
}

TEST(Project, RejectsNonConvex) {
  const ConvexSet k = ConvexSet::ball_plus_point(Vector(3), 0.5, Vector::unit(3, 0));
  try {
    project(Vector(3), k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedSet);
  }
}

TEST(Project, IdempotentAndNonexpansive) {
  Rng rng(3);
  const ConvexSet sets[] = {ConvexSet::ball(Vector{0.2, -0.1, 0.0}, 0.7),
                            ConvexSet::box(Vector{-1.0, 0.0, 0.0}, Vector{0.5, 1.0, 2.0}),
                            ConvexSet::order_interval(Vector(3), Vector{1.0, 1.0, 1.0})};
  for (const ConvexSet& k : sets) {
    for (int s = 0; s < 1000; ++s) {
      const Vector x = rng.direction(3, 3) * rng.uniform(0, 4);
      const Vector y = rng.direction(3, 3) * rng.uniform(0, 4);
      const Vector px = project(x, k);
      EXPECT_TRUE(k.contains(px));
      EXPECT_EQ(project(px, k), px);
      EXPECT_LE(distance(px, project(y, k)), distance(x, y) + 1e-12);
    }
  }
}

TEST(ConvexSet, Invariants) {
  EXPECT_THROW(ConvexSet::ball(Vector(2), 0.0), Error);
  EXPECT_THROW(ConvexSet::box(Vector{1.0, 0.0}, Vector{0.0, 1.0}), Error);
  EXPECT_THROW(ConvexSet::ball_plus_point(Vector(2), 0.5, Vector{0.1, 0.0}), Error);
  const ConvexSet k = ConvexSet::ball_plus_point(Vector(2), 0.5, Vector{1.0, 0.0});
  EXPECT_FALSE(k.is_convex());
  EXPECT_TRUE(k.contains(Vector{1.0, 0.0}));
  EXPECT_FALSE(k.contains(Vector{0.75, 0.0}));
  // Membership tolerance.
  const ConvexSet b = ConvexSet::ball(Vector(2), 1.0);
  EXPECT_TRUE(b.contains(Vector{1.0 + 5e-13, 0.0}));
  EXPECT_FALSE(b.contains(Vector{1.0 + 1e-9, 0.0}));
}

TEST(ConvexSet, SamplesStayInside) {
  Rng rng(5);
  const ConvexSet b = ConvexSet::ball(Vector{1.0, 0.0, 0.0, 0.0}, 0.5);
  for (int s = 0; s < 1000; ++s) {
    const Vector x = b.sample(rng, 2);
    EXPECT_TRUE(b.contains(x));
    EXPECT_EQ(x[2], 0.0);
  }
}

TEST(Modulus, Examples) {
  EXPECT_EQ(modulus_of_convexity(0.0), 0.0);
  EXPECT_NEAR(modulus_of_convexity(1.0), 1.0 - std::sqrt(3.0) / 2.0, 1e-6);
  EXPECT_NEAR(modulus_of_convexity(2.0 - 1e-9), 1.0, 1e-4);
  EXPECT_THROW(modulus_of_convexity(2.0), Error);
  EXPECT_THROW(modulus_of_convexity(-0.1), Error);
}

// Independent oracle: brute-force grid over pairs of unit-disc points.
double grid_modulus(double eps) {
  double best = 1.0;
  const int n = 7200;
  for (int i = 0; i <= 20; ++i) {
    const double ra = 1.0 - i * 0.0005;
    for (int j = 0; j < n; ++j) {
      const double t = 2 * M_PI * j / n;
      const double bx = std::cos(t), by = std::sin(t);
      const double dx = ra - bx, dy = -by;
      if (std::hypot(dx, dy) < eps) continue;
      best = std::min(best, 1.0 - std::hypot((ra + bx) / 2, by / 2));
    }
  }
  return best;
}

TEST(Modulus, HilbertMatchesAnalyticAndGrid) {
  for (double eps = 0.25; eps < 1.8; eps += 0.25) {
    const double analytic = 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
    const double est = modulus_of_convexity(eps);
    EXPECT_NEAR(est, analytic, 1e-4) << eps;
    EXPECT_GE(est, analytic - 1e-12) << eps;
    EXPECT_NEAR(grid_modulus(eps), analytic, 2e-3) << eps;
  }
}

TEST(Modulus, NondecreasingInEps) {
  for (double p : {1.5, 2.0, 4.0}) {
    double prev = 0.0;
    for (double eps = 0.1; eps < 1.95; eps += 0.1) {
      const double v = modulus_of_convexity(eps, NormTag(p));
      EXPECT_GE(v, prev - 1e-6) << "p=" << p << " eps=" << eps;
      prev = v;
    }
  }
}
