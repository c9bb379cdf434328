#include "fixpt/vecspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fixpt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnsupportedSet: return "unsupported-set";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

void require_finite(std::span<const double> coords) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw Error(ErrorKind::Domain,
                  "non-finite coordinate at index " + std::to_string(i));
    }
  }
}

}  // namespace

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {
  require_finite(coords_);
}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  require_finite(coords_);
}

Vector Vector::padded(std::span<const double> coords, std::size_t dim) {
  if (coords.size() > dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "got " + std::to_string(coords.size()) +
                    " coordinates for dimension " + std::to_string(dim));
  }
  std::vector<double> out(dim, 0.0);
  std::copy(coords.begin(), coords.end(), out.begin());
  return Vector(std::move(out));
}

Vector Vector::unit(std::size_t dim, std::size_t axis) {
  Vector e(dim);
  e.coords_.at(axis) = 1.0;
  return e;
}

Vector Vector::with(std::size_t i, double value) const {
  std::vector<double> out = coords_;
  out.at(i) = value;
  return Vector(std::move(out));
}

std::size_t Vector::support_end() const noexcept {
  std::size_t end = coords_.size();
  while (end > 0 && coords_[end - 1] == 0.0) --end;
  return end;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

std::string Vector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ", ";
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

NormTag::NormTag(double p) : p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::Domain, "norm exponent p must lie in (1, inf)");
  }
}

namespace {

double lp_norm(std::span<const double> x, double p) {
  if (p == 2.0) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return std::sqrt(s);
  }
  double scale = 0.0;
  for (double c : x) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double c : x) s += std::pow(std::abs(c) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

}  // namespace

double norm(const Vector& x, NormTag tag) { return lp_norm(x.coords(), tag.p()); }

double distance(const Vector& x, const Vector& y, NormTag tag) {
  require_same_dim(x, y);
  if (tag.p() == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const double d = x[i] - y[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  return norm(x - y, tag);
}

double dot(const Vector& x, const Vector& y) {
  require_same_dim(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

std::size_t Rng::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

Vector Rng::direction(std::size_t dim, std::size_t active) {
  active = std::min(active, dim);
  if (active == 0) throw Error(ErrorKind::Domain, "direction needs an active coordinate");
  std::vector<double> c(dim, 0.0);
  double n2 = 0.0;
  while (n2 < 1e-24) {
    n2 = 0.0;
    for (std::size_t i = 0; i < active; ++i) {
      c[i] = normal();
      n2 += c[i] * c[i];
    }
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (std::size_t i = 0; i < active; ++i) c[i] *= inv;
  return Vector(std::move(c));
}

// ---------------------------------------------------------------------------
// ConvexSet

namespace {

void validate_interval(const Vector& lo, const Vector& hi) {
  require_same_dim(lo, hi);
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    if (lo[i] > hi[i]) {
      throw Error(ErrorKind::Domain,
                  "interval bound lo > hi at coordinate " + std::to_string(i));
    }
  }
}

Vector clamp(const Vector& x, const Vector& lo, const Vector& hi) {
  require_same_dim(x, lo);
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = std::clamp(x[i], lo[i], hi[i]);
  return Vector(std::move(out));
}

double box_distance(const Vector& x, const Vector& lo, const Vector& hi) {
  return distance(x, clamp(x, lo, hi));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ConvexSet::ConvexSet(SetShape shape) : shape_(std::move(shape)) {
  bound_ = std::visit(
      overloaded{
          [](const Ball& b) { return 2.0 * b.radius; },
          [](const BallPlusPoint& b) {
            return std::max(2.0 * b.radius, distance(b.center, b.extra) + b.radius);
          },
          [](const Box& b) { return distance(b.lo, b.hi); },
          [](const OrderInterval& b) { return distance(b.lo, b.hi); },
      },
      shape_);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Domain, "ball radius must be positive");
  }
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::ball_plus_point(Vector center, double radius, Vector extra) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Domain, "ball radius must be positive");
  }
  require_same_dim(center, extra);
  if (distance(center, extra) <= radius) {
    throw Error(ErrorKind::Domain, "isolated point must lie outside the ball");
  }
  return ConvexSet(BallPlusPoint{std::move(center), radius, std::move(extra)});
}

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  validate_interval(lo, hi);
  return ConvexSet(Box{std::move(lo), std::move(hi)});
}

ConvexSet ConvexSet::order_interval(Vector lo, Vector hi) {
  validate_interval(lo, hi);
  return ConvexSet(OrderInterval{std::move(lo), std::move(hi)});
}

std::size_t ConvexSet::dim() const noexcept {
  return std::visit(
      overloaded{
          [](const Ball& b) { return b.center.dim(); },
          [](const BallPlusPoint& b) { return b.center.dim(); },
          [](const Box& b) { return b.lo.dim(); },
          [](const OrderInterval& b) { return b.lo.dim(); },
      },
      shape_);
}

bool ConvexSet::is_convex() const noexcept {
  return !std::holds_alternative<BallPlusPoint>(shape_);
}

std::string ConvexSet::kind_name() const {
  return std::visit(overloaded{
                        [](const Ball&) { return "ball"; },
                        [](const BallPlusPoint&) { return "ball_plus_point"; },
                        [](const Box&) { return "box"; },
                        [](const OrderInterval&) { return "order_interval"; },
                    },
                    shape_);
}

double ConvexSet::distance_to(const Vector& x) const {
  return std::visit(
      overloaded{
          [&](const Ball& b) { return std::max(0.0, distance(x, b.center) - b.radius); },
          [&](const BallPlusPoint& b) {
            return std::min(std::max(0.0, distance(x, b.center) - b.radius),
                            distance(x, b.extra));
          },
          [&](const Box& b) { return box_distance(x, b.lo, b.hi); },
          [&](const OrderInterval& b) { return box_distance(x, b.lo, b.hi); },
      },
      shape_);
}

bool ConvexSet::contains(const Vector& x) const {
  return distance_to(x) <= kSetTolerance;
}

namespace {

Vector sample_ball(const Vector& center, double radius, Rng& rng, std::size_t active) {
  const std::size_t k = std::min(active, center.dim());
  const Vector dir = rng.direction(center.dim(), k);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(k));
  return center + dir * r;
}

Vector sample_box(const Vector& lo, const Vector& hi, Rng& rng, std::size_t active) {
  std::vector<double> c(lo.dim());
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    c[i] = i < active ? rng.uniform(lo[i], hi[i]) : std::clamp(0.0, lo[i], hi[i]);
  }
  return Vector(std::move(c));
}

}  // namespace

Vector ConvexSet::sample(Rng& rng, std::size_t active) const {
  return std::visit(
      overloaded{
          [&](const Ball& b) { return sample_ball(b.center, b.radius, rng, active); },
          [&](const BallPlusPoint& b) {
            if (rng.index(8) == 0) return b.extra;
            return sample_ball(b.center, b.radius, rng, active);
          },
          [&](const Box& b) { return sample_box(b.lo, b.hi, rng, active); },
          [&](const OrderInterval& b) { return sample_box(b.lo, b.hi, rng, active); },
      },
      shape_);
}

Vector project(const Vector& x, const ConvexSet& set) {
  if (x.dim() != set.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "projection dimension mismatch");
  }
  return std::visit(
      overloaded{
          [&](const Ball& b) -> Vector {
            const double d = distance(x, b.center);
            // Rescaled points can land a few ulps outside; keep them fixed.
            if (d <= b.radius * (1 + 8 * std::numeric_limits<double>::epsilon())) return x;
            return b.center + (x - b.center) * (b.radius / d);
          },
          [&](const BallPlusPoint&) -> Vector {
            throw Error(ErrorKind::UnsupportedSet,
                        "projection onto a non-convex set (ball plus point)");
          },
          [&](const Box& b) { return clamp(x, b.lo, b.hi); },
          [&](const OrderInterval& b) { return clamp(x, b.lo, b.hi); },
      },
      set.shape());
}

// ---------------------------------------------------------------------------
// Modulus of convexity

namespace {

using Plane = std::array<double, 2>;

double plane_norm(const Plane& v, double p) { return lp_norm(v, p); }

Plane normalized(const Plane& v, double p) {
  const double n = plane_norm(v, p);
  return {v[0] / n, v[1] / n};
}

// Candidate built from two raw directions: a = unit(u); b walks the arc
// b(s) = unit(cos(s) a + sin(s) w) from a (distance 0) to -a (distance 2) and
// is pinned where ||a - b|| first reaches eps. Returns 1 - ||(a+b)/2|| of the
// feasible end of the bracket, or a negative value if the raw pair is degenerate.
double arc_candidate(const Plane& u, const Plane& w, double eps, double p) {
  if (plane_norm(u, p) < 1e-12) return -1.0;
  const Plane a = normalized(u, p);
  Plane wn = w;
  // Remove the component along a so the arc is a genuine half-turn.
  const double along = (wn[0] * a[0] + wn[1] * a[1]) / (a[0] * a[0] + a[1] * a[1]);
  wn = {wn[0] - along * a[0], wn[1] - along * a[1]};
  if (plane_norm(wn, p) < 1e-9) return -1.0;
  wn = normalized(wn, p);

  auto point = [&](double s) {
    return normalized({std::cos(s) * a[0] + std::sin(s) * wn[0],
                       std::cos(s) * a[1] + std::sin(s) * wn[1]},
                      p);
  };
  auto gap = [&](const Plane& b) { return plane_norm({a[0] - b[0], a[1] - b[1]}, p); };

  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gap(point(mid)) >= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const Plane b = point(hi);
  if (gap(b) < eps) return -1.0;
  const double mid_norm = plane_norm({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])}, p);
  return std::max(0.0, 1.0 - mid_norm);
}

}  // namespace

double modulus_of_convexity(double eps, NormTag tag, std::size_t samples,
                            std::uint64_t seed) {
  if (!(eps >= 0.0) || !(eps < 2.0)) {
    throw Error(ErrorKind::Domain, "modulus of convexity needs 0 <= eps < 2");
  }
  if (eps == 0.0) return 0.0;
  const double p = tag.p();

  // The antipodal pair is always feasible.
  double best = 1.0;
  std::array<double, 4> best_params{1.0, 0.0, 0.0, 1.0};

  Rng rng(seed);
  for (std::size_t s = 0; s < std::max<std::size_t>(samples, 1); ++s) {
    const std::array<double, 4> params{rng.normal(), rng.normal(), rng.normal(),
                                       rng.normal()};
    const double v = arc_candidate({params[0], params[1]}, {params[2], params[3]}, eps, p);
    if (v >= 0.0 && v < best) {
      best = v;
      best_params = params;
    }
  }

  // Compass search on the raw parameters.
  double step = 0.25;
  while (step > 1e-10) {
    bool improved = false;
    for (std::size_t k = 0; k < 4; ++k) {
      for (double sign : {1.0, -1.0}) {
        auto trial = best_params;
        trial[k] += sign * step;
        const double v = arc_candidate({trial[0], trial[1]}, {trial[2], trial[3]}, eps, p);
        if (v >= 0.0 && v < best) {
          best = v;
          best_params = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace fixpt
