#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fixpt/vecspace.hpp"

namespace fixpt {

/// f(x_1, x_2, x_3, ...) = (0, x_1^2, b_2 x_2, b_3 x_3, ...) on l2, truncated
/// to d coordinates. `b[n-1]` holds b_n; b_1 is unused.
struct PaperExample {
  std::vector<double> b;
};

/// x -> anchor + lambda (x - anchor).
struct Contraction {
  double lambda;
  Vector anchor;
};

/// Rotation by theta in the coordinate plane (i, j); other coordinates fixed.
struct Rotation {
  double theta;
  std::size_t i = 0;
  std::size_t j = 1;
};

/// x -> (x + R(x)) / 2 for the rotation R above.
struct AveragedRotation {
  double theta;
  std::size_t i = 0;
  std::size_t j = 1;
};

/// x -> (x + u) / 2.
struct MonotoneAverage {
  Vector u;
};

/// x -> factor x. Only meaningful as a counterexample (it rarely maps K to K).
struct Scaling {
  double factor;
};

struct Identity {};

using MapKind = std::variant<PaperExample, Contraction, Rotation, AveragedRotation,
                             MonotoneAverage, Scaling, Identity>;

/// Coefficients b_n = 1/2 + 2^-n, n = 1..dim. Strictly decreasing in (1/2, 1).
std::vector<double> default_paper_coefficients(std::size_t dim);

/// The coefficients b_n = exp(-2^-n): increasing, with positive infinite product.
std::vector<double> exp_paper_coefficients(std::size_t dim);

/// A catalog self-map T of K. Immutable; evaluation is exact in the sense
/// that every iterate is the truncation of the infinite-dimensional map.
class MapInstance {
 public:
  /// Constructs without sampling the self-map property; see make_checked_map.
  MapInstance(MapKind kind, ConvexSet domain);

  const MapKind& kind() const noexcept { return kind_; }
  const ConvexSet& domain() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return domain_.dim(); }
  std::string name() const;

  /// T(x) for x in K (within the set tolerance).
  Vector apply(const Vector& x) const;

  /// The catalog formula without the domain check; `in` and `out` must not alias.
  void apply_into(std::span<const double> in, std::span<double> out) const;

  /// T^n(x0) by n exact applications. Refuses when the truncation would
  /// drop a nonzero coordinate.
  Vector iterate(const Vector& x0, std::size_t n) const;

  /// How many leading coordinates a starting point may occupy so that n
  /// iterations stay exact.
  std::size_t support_budget(std::size_t n) const noexcept;

  /// Monotone for the componentwise order (needed by the order-graph pipeline).
  bool order_compatible() const noexcept;

 private:
  void require_in_domain(const Vector& x) const;

  MapKind kind_;
  ConvexSet domain_;
};

/// Builds the map and samples `samples` points of K to confirm T(K) in K.
/// The isolated point of a ball-plus-point domain is exempt.
MapInstance make_checked_map(MapKind kind, ConvexSet domain, std::size_t samples = 1000,
                             std::uint64_t seed = 0);

struct FixedPointSet {
  bool everything = false;
  std::vector<Vector> points;
};

FixedPointSet known_fixed_points(const MapInstance& map);

/// Lipschitz factors alpha_1..alpha_N of the iterates, with the limit they are
/// claimed to approach.
struct AlphaSequence {
  std::vector<double> values;
  double claimed_limit = 1.0;
};

}  // namespace fixpt
