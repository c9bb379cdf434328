#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fixpt/error.hpp"

namespace fixpt {

/// Membership tolerance for every ConvexSet.
inline constexpr double kSetTolerance = 1e-12;

/// A point of the truncated sequence space R^d. Coordinates are always finite.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim, 0.0) {}
  Vector(std::initializer_list<double> coords);
  explicit Vector(std::vector<double> coords);

  /// Zero-pads `coords` up to `dim`; throws if it is longer.
  static Vector padded(std::span<const double> coords, std::size_t dim);
  static Vector unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Copy with one coordinate replaced.
  Vector with(std::size_t i, double value) const;

  /// Index one past the last nonzero coordinate (0 for the zero vector).
  std::size_t support_end() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

void require_same_dim(const Vector& a, const Vector& b);

/// Selects the l_p norm; p must lie strictly between 1 and infinity.
class NormTag {
 public:
  explicit NormTag(double p = 2.0);
  double p() const noexcept { return p_; }

 private:
  double p_;
};

double norm(const Vector& x, NormTag tag = NormTag{});
double distance(const Vector& x, const Vector& y, NormTag tag = NormTag{});
double dot(const Vector& x, const Vector& y);

/// Seeded source of randomness shared by every sampler in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  std::size_t index(std::size_t n);
  /// Uniform direction on the l2 unit sphere of R^dim, nonzero only in the
  /// first `active` coordinates.
  Vector direction(std::size_t dim, std::size_t active);

 private:
  std::mt19937_64 engine_;
};

struct Ball {
  Vector center;
  double radius;
};

/// The non-convex domain of the l2 counterexample: a closed ball together
/// with one isolated point outside it.
struct BallPlusPoint {
  Vector center;
  double radius;
  Vector extra;
};

struct Box {
  Vector lo;
  Vector hi;
};

struct OrderInterval {
  Vector lo;
  Vector hi;
};

using SetShape = std::variant<Ball, BallPlusPoint, Box, OrderInterval>;

/// The feasible set K. Balls are measured in l2.
class ConvexSet {
 public:
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet ball_plus_point(Vector center, double radius, Vector extra);
  static ConvexSet box(Vector lo, Vector hi);
  static ConvexSet order_interval(Vector lo, Vector hi);

  const SetShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept;
  bool is_convex() const noexcept;
  std::string kind_name() const;

  /// Upper bound on diam(K).
  double bound() const noexcept { return bound_; }

  bool contains(const Vector& x) const;
  double distance_to(const Vector& x) const;

  /// Draws a point of K that varies only in the first `active` coordinates.
  /// Balls are sampled uniformly around their center; boxes uniformly in the
  /// active coordinates and clamped-zero elsewhere. BallPlusPoint returns its
  /// isolated point with probability 1/8.
  Vector sample(Rng& rng, std::size_t active) const;
  Vector sample(Rng& rng) const { return sample(rng, dim()); }

 private:
  explicit ConvexSet(SetShape shape);

  SetShape shape_;
  double bound_ = 0.0;
};

/// Nearest point of K in l2. Ball: radial scaling; Box / OrderInterval:
/// componentwise clamp. Non-convex sets are rejected.
Vector project(const Vector& x, const ConvexSet& set);

/// Estimate of the modulus of convexity
///   delta(eps) = inf { 1 - ||(a+b)/2|| : ||a||,||b|| <= 1, ||a-b|| >= eps }
/// for the l_p plane. Every candidate is a feasible pair, so the returned
/// value is an upper bound on the infimum up to the bisection tolerance.
double modulus_of_convexity(double eps, NormTag tag = NormTag{},
                            std::size_t samples = 256, std::uint64_t seed = 0);

}  // namespace fixpt
