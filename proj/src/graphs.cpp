#include "fixpt/graphs.hpp"

#include <cmath>
#include <sstream>

namespace fixpt {

GraphSpec GraphSpec::proximity(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::Domain, "proximity radius must be positive");
  }
  return GraphSpec(ProximityGraph{eps});
}

double GraphSpec::eps() const {
  if (const auto* p = std::get_if<ProximityGraph>(&kind_)) return p->eps;
  throw Error(ErrorKind::Unsupported, "graph " + name() + " has no proximity radius");
}

std::string GraphSpec::name() const {
  if (is_full()) return "full";
  if (is_order()) return "order";
  std::ostringstream os;
  os.precision(17);
  os << "proximity(" << eps() << ")";
  return os.str();
}

Comparator componentwise_leq(double slack) {
  return [slack](const Vector& x, const Vector& y) {
    require_same_dim(x, y);
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (x[i] > y[i] + slack) return false;
    }
    return true;
  };
}

bool has_edge(const GraphSpec& graph, const Vector& x, const Vector& y,
              const Comparator& order) {
  require_same_dim(x, y);
  if (x == y) return true;
  if (graph.is_full()) return true;
  if (graph.is_proximity()) return distance(x, y) < graph.eps();
  return order(x, y) || order(y, x);
}

namespace {

void require_member(const Vector& x, const ConvexSet& set, const char* which) {
  if (!set.contains(x)) {
    std::ostringstream os;
    os << "path endpoint " << which << " lies outside K (distance "
       << set.distance_to(x) << ")";
    throw Error(ErrorKind::Precondition, os.str());
  }
}

std::size_t subdivision_count(double length, double eps) {
  return static_cast<std::size_t>(std::floor(length / eps)) + 1;
}

}  // namespace

PathInK chain_path(const Vector& x, const Vector& y, const ConvexSet& set,
                   const GraphSpec& graph) {
  if (!graph.is_proximity()) {
    throw Error(ErrorKind::Unsupported, "chain_path needs a proximity graph");
  }
  if (!set.is_convex()) {
    throw Error(ErrorKind::UnsupportedSet, "chain_path needs a convex K");
  }
  require_member(x, set, "x");
  require_member(y, set, "y");

  const double eps = graph.eps();
  const Vector step = y - x;
  std::size_t pieces = subdivision_count(norm(step), eps);

  // Rounding in the node formula can push a piece to eps when |x-y|/eps sits
  // just below an integer; one more piece then restores the strict bound.
  for (;;) {
    PathInK path;
    path.nodes.reserve(pieces + 1);
    path.nodes.push_back(x);
    for (std::size_t i = 1; i < pieces; ++i) {
      path.nodes.push_back(x + step * (static_cast<double>(i) / static_cast<double>(pieces)));
    }
    path.nodes.push_back(y);

    bool ok = true;
    for (std::size_t i = 1; i < path.nodes.size() && ok; ++i) {
      ok = has_edge(graph, path.nodes[i - 1], path.nodes[i]);
    }
    if (ok) return path;
    ++pieces;
  }
}

bool in_reachability_class(const Vector& x0, const Vector& y, const GraphSpec& graph,
                           const ConvexSet& set, std::size_t max_length,
                           const Comparator& order) {
  if (max_length == 0) {
    throw Error(ErrorKind::Domain, "reachability length L must be positive");
  }
  if (graph.is_proximity()) {
    return chain_path(x0, y, set, graph).length() <= max_length;
  }
  require_member(x0, set, "x0");
  require_member(y, set, "y");
  return has_edge(graph, x0, y, order);
}

}  // namespace fixpt
