#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fixpt/vecspace.hpp"

namespace fixpt {

struct FullGraph {};

/// Edges join points at l2 distance strictly below eps.
struct ProximityGraph {
  double eps;
};

/// Edges join comparable points: x <= y or y <= x.
struct OrderGraph {};

/// Graph on the whole space. Every builder contains the diagonal and is
/// symmetric; the vertex set is never stored.
class GraphSpec {
 public:
  static GraphSpec full() { return GraphSpec(FullGraph{}); }
  static GraphSpec proximity(double eps);
  static GraphSpec order() { return GraphSpec(OrderGraph{}); }

  const std::variant<FullGraph, ProximityGraph, OrderGraph>& kind() const noexcept {
    return kind_;
  }
  bool is_full() const noexcept { return std::holds_alternative<FullGraph>(kind_); }
  bool is_proximity() const noexcept {
    return std::holds_alternative<ProximityGraph>(kind_);
  }
  bool is_order() const noexcept { return std::holds_alternative<OrderGraph>(kind_); }
  /// Proximity radius; throws for other kinds.
  double eps() const;

  std::string name() const;

 private:
  explicit GraphSpec(std::variant<FullGraph, ProximityGraph, OrderGraph> kind)
      : kind_(kind) {}

  std::variant<FullGraph, ProximityGraph, OrderGraph> kind_;
};

/// Partial order on vectors: returns true when `x` precedes `y`.
using Comparator = std::function<bool(const Vector& x, const Vector& y)>;

/// Componentwise x_i <= y_i + slack.
Comparator componentwise_leq(double slack = 0.0);

bool has_edge(const GraphSpec& graph, const Vector& x, const Vector& y,
              const Comparator& order = componentwise_leq());

/// A path y_0, ..., y_L inside K whose consecutive nodes are edges.
struct PathInK {
  std::vector<Vector> nodes;

  std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Equal subdivision of the segment [x, y] into L = floor(|x-y|/eps) + 1
/// pieces, the fewest equal pieces that are each shorter than eps. Requires
/// x, y in a convex K and a proximity graph.
PathInK chain_path(const Vector& x, const Vector& y, const ConvexSet& set,
                   const GraphSpec& graph);

/// Whether y lies in the L-step reachability class of x0. Proximity graphs are
/// decided by chain_path, the full graph always admits the direct edge, and
/// order graphs are decided by direct comparability only.
bool in_reachability_class(const Vector& x0, const Vector& y, const GraphSpec& graph,
                           const ConvexSet& set, std::size_t max_length,
                           const Comparator& order = componentwise_leq());

}  // namespace fixpt
