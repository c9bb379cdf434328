#include "fixpt/center.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fixpt {

TailWindow::TailWindow(std::size_t start_, std::size_t end_) : start(start_), end(end_) {
  if (!(start < end) || end - start < 8) {
    throw Error(ErrorKind::Domain, "tail window needs start < end and at least 9 points");
  }
}

TailWindow TailWindow::last_half(std::size_t length) {
  if (length < 9) throw Error(ErrorKind::Domain, "sequence too short for a tail window");
  const std::size_t end = length - 1;
  const std::size_t start = std::min(length / 2, end - 8);
  return TailWindow(start, end);
}

const char* to_string(CenterSolver solver) {
  switch (solver) {
    case CenterSolver::ProjectedSubgradient: return "ProjectedSubgradient";
    case CenterSolver::CoreSetMEB: return "CoreSetMEB";
    case CenterSolver::GridOracle: return "GridOracle";
  }
  return "Unknown";
}

namespace {

std::span<const Vector> window_of(std::span<const Vector> seq, const TailWindow& w) {
  if (w.end >= seq.size() || w.start > w.end) {
    throw Error(ErrorKind::Domain, "tail window exceeds the sequence bounds");
  }
  return seq.subspan(w.start, w.size());
}

struct Farthest {
  double dist;
  std::size_t index;
};

// Lowest index wins ties.
Farthest farthest(std::span<const Vector> pts, const Vector& y) {
  Farthest best{-1.0, 0};
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double d = distance(pts[k], y);
    if (d > best.dist) best = {d, k};
  }
  return best;
}

Vector centroid(std::span<const Vector> pts) {
  Vector c(pts.front().dim());
  for (const Vector& p : pts) c += p;
  return c * (1.0 / static_cast<double>(pts.size()));
}

}  // namespace

double radius_at(std::span<const Vector> seq, const TailWindow& window, const Vector& y) {
  const auto pts = window_of(seq, window);
  if (pts.empty()) throw Error(ErrorKind::Domain, "empty tail window");
  return farthest(pts, y).dist;
}

double optimality_gap(std::span<const Vector> seq, const TailWindow& window,
                      const ConvexSet& set, const Vector& center, double step) {
  const double base = radius_at(seq, window, center);
  double gap = 0.0;
  for (std::size_t i = 0; i < center.dim(); ++i) {
    for (double sign : {1.0, -1.0}) {
      const Vector probe = center.with(i, center[i] + sign * step);
      if (!set.contains(probe)) continue;
      gap = std::max(gap, base - radius_at(seq, window, probe));
    }
  }
  return gap;
}

namespace {

// Minimum-norm point of conv{v_i} by pairwise Frank-Wolfe.
Vector min_norm_hull_point(std::span<const Vector> v) {
  const std::size_t m = v.size();
  std::vector<double> w(m, 0.0);
  w[0] = 1.0;
  Vector x = v[0];
  for (int it = 0; it < 10000; ++it) {
    std::size_t toward = 0, away = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double q = dot(v[i], x);
      if (q < lo) {
        lo = q;
        toward = i;
      }
      if (w[i] > 0.0 && q > hi) {
        hi = q;
        away = i;
      }
    }
    if (hi - lo < 1e-16) break;
    const Vector d = v[toward] - v[away];
    const double dd = dot(d, d);
    if (dd <= 0.0) break;
    const double t = std::clamp(-dot(x, d) / dd, 0.0, w[away]);
    x += d * t;
    w[toward] += t;
    w[away] -= t;
    if (w[away] < 1e-300) w[away] = 0.0;
  }
  return x;
}

}  // namespace

CenterResult asymptotic_center(std::span<const Vector> seq, const TailWindow& window,
                               const ConvexSet& set, const CenterOptions& options) {
  if (!set.is_convex()) {
    throw Error(ErrorKind::UnsupportedSet, "asymptotic center needs a convex K");
  }
  const auto pts = window_of(seq, window);
  CenterResult result;
  result.solver = CenterSolver::ProjectedSubgradient;
  result.window = window;

  Vector y = project(centroid(pts), set);
  double f = farthest(pts, y).dist;
  result.trajectory.push_back(f);

  auto value_along = [&](const Vector& dir, double t) {
    return farthest(pts, project(y + dir * t, set)).dist;
  };

  std::vector<Vector> active;
  std::size_t k = 1;
  for (; k <= options.max_iter && f > 0.0; ++k) {
    double best = f;
    Vector best_y = y;
    // Each rung of the ladder takes the points within eta of the maximum; its
    // unit subgradients span the eta-subdifferential. A singleton rung is the
    // plain subgradient of the farthest point.
    for (double eta = 0.25 * f; eta > 1e-15 * std::max(f, 1.0); eta *= 0.25) {
      active.clear();
      for (const Vector& p : pts) {
        const double d = distance(p, y);
        if (d >= f - eta && d > 0.0) active.push_back((y - p) * (1.0 / d));
      }
      if (active.empty()) continue;
      const Vector g = min_norm_hull_point(active);
      const double gn = norm(g);
      if (gn < 1e-15) continue;
      const Vector dir = g * (-1.0 / gn);

      // Golden-section line search; the optimum is within 2f of y.
      constexpr double kGolden = 0.6180339887498949;
      double a = 0.0;
      double b = 2.0 * f;
      double t1 = b - kGolden * (b - a);
      double t2 = a + kGolden * (b - a);
      double f1 = value_along(dir, t1);
      double f2 = value_along(dir, t2);
      for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
          b = t2;
          t2 = t1;
          f2 = f1;
          t1 = b - kGolden * (b - a);
          f1 = value_along(dir, t1);
        } else {
          a = t1;
          t1 = t2;
          f1 = f2;
          t2 = a + kGolden * (b - a);
          f2 = value_along(dir, t2);
        }
      }
      const Vector candidate = project(y + dir * (0.5 * (a + b)), set);
      const double fc = farthest(pts, candidate).dist;
      if (fc < best) {
        best = fc;
        best_y = candidate;
      }
    }
    const bool progressed = best < f;
    if (progressed) {
      y = best_y;
      f = best;
    }
    result.trajectory.push_back(f);
    if (!progressed) break;
    const std::size_t back = std::min(k, options.stall_window);
    if (result.trajectory[k - back] - f < options.tol * 1e-3) break;
  }
  result.iterations = std::min(k, options.max_iter);
  result.center = y;
  result.radius = radius_at(seq, window, y);
  result.residual = optimality_gap(seq, window, set, y, options.tol);
  return result;
}

CenterResult core_set_meb(std::span<const Vector> seq, const TailWindow& window, double tol,
                          std::size_t max_iter) {
  const auto pts = window_of(seq, window);
  const std::size_t m = pts.size();
  const std::size_t d = pts.front().dim();
  CenterResult result;
  result.solver = CenterSolver::CoreSetMEB;
  result.window = window;

  auto sq = [&](std::size_t j, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double t = pts[j][i] - c[i];
      s += t * t;
    }
    return s;
  };

  // Seed with the two mutually farthest points found by two sweeps.
  std::vector<double> weights(m, 0.0);
  const std::size_t a = farthest(pts, pts[0]).index;
  const std::size_t b = farthest(pts, pts[a]).index;
  weights[a] += 0.5;
  weights[b] += 0.5;

  std::vector<double> c(d, 0.0);
  auto rebuild_center = [&] {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (weights[j] == 0.0) continue;
      for (std::size_t i = 0; i < d; ++i) c[i] += weights[j] * pts[j][i];
    }
  };
  rebuild_center();

  std::vector<double> dist2(m);
  const double rel = std::max(tol * 1e-4, 1e-15);
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    if (it % 64 == 0) rebuild_center();
    double r2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      dist2[j] = sq(j, c);
      r2 += weights[j] * dist2[j];
    }
    std::size_t up = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (dist2[j] > dist2[up]) up = j;
    }
    if (dist2[up] == 0.0 || r2 <= 0.0) break;
    std::size_t down = up;
    double down_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (weights[j] > 0.0 && dist2[j] < down_d) {
        down_d = dist2[j];
        down = j;
      }
    }
    const double eps_up = dist2[up] / r2 - 1.0;
    const double eps_down = 1.0 - down_d / r2;
    result.trajectory.push_back(std::sqrt(dist2[up]));
    if (std::max(eps_up, eps_down) <= rel) break;

    if (eps_up >= eps_down) {
      // Toward step: move the center to the farthest point.
      const double lambda = eps_up / (2.0 * (1.0 + eps_up));
      for (double& w : weights) w *= 1.0 - lambda;
      weights[up] += lambda;
      for (std::size_t i = 0; i < d; ++i) c[i] = (1.0 - lambda) * c[i] + lambda * pts[up][i];
    } else {
      // Away step: shift weight off the nearest support point.
      const double cap = weights[down] / (1.0 - weights[down]);
      const double lambda = std::min(eps_down / (2.0 * (1.0 - eps_down)), cap);
      for (double& w : weights) w *= 1.0 + lambda;
      weights[down] -= lambda;
      if (lambda == cap || weights[down] < 1e-300) weights[down] = 0.0;
      for (std::size_t i = 0; i < d; ++i) c[i] = (1.0 + lambda) * c[i] - lambda * pts[down][i];
    }
  }
  rebuild_center();
  result.iterations = it;
  result.center = Vector(c);
  result.radius = radius_at(seq, window, result.center);
  result.residual = 0.0;
  return result;
}

CenterResult grid_oracle(std::span<const Vector> seq, const TailWindow& window,
                         const ConvexSet& set, double resolution) {
  if (set.dim() != 2) throw Error(ErrorKind::Unsupported, "grid oracle is two-dimensional only");
  if (!set.is_convex()) throw Error(ErrorKind::UnsupportedSet, "grid oracle needs a convex K");
  const auto pts = window_of(seq, window);

  double lo[2], hi[2];
  if (const auto* b = std::get_if<Ball>(&set.shape())) {
    for (int i = 0; i < 2; ++i) {
      lo[i] = b->center[i] - b->radius;
      hi[i] = b->center[i] + b->radius;
    }
  } else {
    const auto& box = std::holds_alternative<Box>(set.shape())
                          ? std::get<Box>(set.shape()).lo
                          : std::get<OrderInterval>(set.shape()).lo;
    const auto& box_hi = std::holds_alternative<Box>(set.shape())
                             ? std::get<Box>(set.shape()).hi
                             : std::get<OrderInterval>(set.shape()).hi;
    for (int i = 0; i < 2; ++i) {
      lo[i] = box[i];
      hi[i] = box_hi[i];
    }
  }

  double best = std::numeric_limits<double>::infinity();
  // Squared objective; abandons a candidate once it can no longer win.
  auto value = [&](double x, double y) {
    double worst = 0.0;
    for (const Vector& p : pts) {
      const double dx = p[0] - x;
      const double dy = p[1] - y;
      worst = std::max(worst, dx * dx + dy * dy);
      if (worst >= best) break;
    }
    return worst;
  };

  CenterResult result;
  result.solver = CenterSolver::GridOracle;
  result.window = window;
  double bx = 0.0, by = 0.0;
  const auto nx = static_cast<std::size_t>(std::ceil((hi[0] - lo[0]) / resolution));
  const auto ny = static_cast<std::size_t>(std::ceil((hi[1] - lo[1]) / resolution));
  for (std::size_t i = 0; i <= nx; ++i) {
    const double x = std::min(lo[0] + static_cast<double>(i) * resolution, hi[0]);
    for (std::size_t j = 0; j <= ny; ++j) {
      const double y = std::min(lo[1] + static_cast<double>(j) * resolution, hi[1]);
      if (!set.contains(Vector{x, y})) continue;
      const double v = value(x, y);
      ++result.iterations;
      if (v < best) {
        best = v;
        bx = x;
        by = y;
      }
    }
  }
  result.trajectory.push_back(std::sqrt(best));

  // Zoom: 21 x 21 grids spanning +-2h around the incumbent, re-centred until
  // it stops moving, then h shrinks 5x.
  for (double h = resolution; h > 1e-13; h /= 5.0) {
    for (int pass = 0; pass < 1000; ++pass) {
      const double cx = bx, cy = by;
      for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
          const double x = cx + 0.2 * h * i;
          const double y = cy + 0.2 * h * j;
          if (!set.contains(Vector{x, y})) continue;
          const double v = value(x, y);
          ++result.iterations;
          if (v < best) {
            best = v;
            bx = x;
            by = y;
          }
        }
      }
      if (bx == cx && by == cy) break;
    }
    result.trajectory.push_back(std::sqrt(best));
  }

  // Pattern search stalls where two nearly opposite points are farthest, so
  // finish with the exact candidates: every unconstrained optimum in the plane
  // is a pair midpoint or a triangle circumcenter.
  std::vector<Vector> distinct;
  for (const Vector& p : pts) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  }
  auto consider = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !set.contains(Vector{x, y})) return;
    const double v = value(x, y);
    ++result.iterations;
    if (v < best) {
      best = v;
      bx = x;
      by = y;
    }
  };
  const std::size_t m = distinct.size();
  for (std::size_t a = 0; a < m; ++a) {
    const Vector& p = distinct[a];
    consider(p[0], p[1]);
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vector& q = distinct[b];
      consider(0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]));
      for (std::size_t c = b + 1; c < m; ++c) {
        const Vector& r = distinct[c];
        const double d = 2 * (p[0] * (q[1] - r[1]) + q[0] * (r[1] - p[1]) + r[0] * (p[1] - q[1]));
        if (std::abs(d) < 1e-14) continue;
        const double p2 = p[0] * p[0] + p[1] * p[1];
        const double q2 = q[0] * q[0] + q[1] * q[1];
        const double r2 = r[0] * r[0] + r[1] * r[1];
        consider((p2 * (q[1] - r[1]) + q2 * (r[1] - p[1]) + r2 * (p[1] - q[1])) / d,
                 (p2 * (r[0] - q[0]) + q2 * (p[0] - r[0]) + r2 * (q[0] - p[0])) / d);
      }
    }
  }
  result.trajectory.push_back(std::sqrt(best));

  result.center = Vector{bx, by};
  result.radius = radius_at(seq, window, result.center);
  result.residual = optimality_gap(seq, window, set, result.center, 1e-8);
  return result;
}

MinimizingSequenceCheck minimizing_sequence_check(std::span<const Vector> seq,
                                                  const TailWindow& window,
                                                  const ConvexSet& set,
                                                  const CenterResult& result,
                                                  std::span<const double> scales,
                                                  std::uint64_t seed) {
  MinimizingSequenceCheck out;
  out.scales.assign(scales.begin(), scales.end());
  Rng rng(seed);
  const Vector u = rng.direction(result.center.dim(), result.center.dim());
  for (double delta : scales) {
    const Vector z = project(result.center + u * delta, set);
    const double r = radius_at(seq, window, z);
    out.points.push_back(z);
    out.radii.push_back(r);
    out.radius_gaps.push_back(r - result.radius);
    out.distances.push_back(distance(z, result.center));
  }
  for (std::size_t k = 0; k < out.scales.size(); ++k) {
    out.gaps_bounded = out.gaps_bounded && out.radius_gaps[k] <= out.scales[k] + 1e-12;
    out.distances_bounded = out.distances_bounded && out.distances[k] <= out.scales[k] + 1e-12;
    if (k > 0) {
      out.monotone = out.monotone && out.radius_gaps[k] <= out.radius_gaps[k - 1] + 1e-9 &&
                     out.distances[k] <= out.distances[k - 1] + 1e-9;
    }
  }
  return out;
}

}  // namespace fixpt
