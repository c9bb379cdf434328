#include "fixpt/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fixpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_plane(std::size_t i, std::size_t j, std::size_t dim) {
  if (i == j || i >= dim || j >= dim) {
    throw Error(ErrorKind::Domain, "rotation plane must be two distinct coordinates < dim");
  }
}

void validate(const MapKind& kind, const ConvexSet& domain) {
  const std::size_t d = domain.dim();
  std::visit(overloaded{
                 [&](const PaperExample& m) {
                   if (d < 3) throw Error(ErrorKind::Domain, "PaperExample needs dim >= 3");
                   if (m.b.size() != d) {
                     throw Error(ErrorKind::DimensionMismatch,
                                 "PaperExample needs one coefficient per coordinate");
                   }
                   for (double b : m.b) {
                     if (!(b > 0.0) || !std::isfinite(b)) {
                       throw Error(ErrorKind::Domain, "PaperExample coefficients must be positive");
                     }
                   }
                 },
                 [&](const Contraction& m) {
                   if (!(m.lambda > 0.0 && m.lambda < 1.0)) {
                     throw Error(ErrorKind::Domain, "contraction factor must lie in (0,1)");
                   }
                   if (m.anchor.dim() != d) {
                     throw Error(ErrorKind::DimensionMismatch, "contraction anchor dimension");
                   }
                 },
                 [&](const Rotation& m) { validate_plane(m.i, m.j, d); },
                 [&](const AveragedRotation& m) { validate_plane(m.i, m.j, d); },
                 [&](const MonotoneAverage& m) {
                   if (m.u.dim() != d) {
                     throw Error(ErrorKind::DimensionMismatch, "average target dimension");
                   }
                 },
                 [&](const Scaling& m) {
                   if (!std::isfinite(m.factor)) throw Error(ErrorKind::Domain, "scaling factor");
                 },
                 [](const Identity&) {},
             },
             kind);
}

void rotate(std::span<const double> in, std::span<double> out, double theta,
            std::size_t i, std::size_t j) {
  std::copy(in.begin(), in.end(), out.begin());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  out[i] = c * in[i] - s * in[j];
  out[j] = s * in[i] + c * in[j];
}

}  // namespace

std::vector<double> default_paper_coefficients(std::size_t dim) {
  std::vector<double> b(dim);
  for (std::size_t n = 1; n <= dim; ++n) b[n - 1] = 0.5 + std::ldexp(1.0, -static_cast<int>(n));
  return b;
}

std::vector<double> exp_paper_coefficients(std::size_t dim) {
  std::vector<double> b(dim);
  for (std::size_t n = 1; n <= dim; ++n) {
    b[n - 1] = std::exp(-std::ldexp(1.0, -static_cast<int>(n)));
  }
  return b;
}

MapInstance::MapInstance(MapKind kind, ConvexSet domain)
    : kind_(std::move(kind)), domain_(std::move(domain)) {
  validate(kind_, domain_);
  if (!domain_.is_convex() && !std::holds_alternative<PaperExample>(kind_)) {
    throw Error(ErrorKind::UnsupportedSet,
                "a ball-plus-point domain is admitted only for PaperExample");
  }
}

std::string MapInstance::name() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const PaperExample&) { os << "paper_example"; },
                 [&](const Contraction& m) { os << "contraction(" << m.lambda << ")"; },
                 [&](const Rotation& m) { os << "rotation(" << m.theta << ")"; },
                 [&](const AveragedRotation& m) { os << "averaged_rotation(" << m.theta << ")"; },
                 [&](const MonotoneAverage&) { os << "monotone_average"; },
                 [&](const Scaling& m) { os << "scaling(" << m.factor << ")"; },
                 [&](const Identity&) { os << "identity"; },
             },
             kind_);
  return os.str();
}

void MapInstance::apply_into(std::span<const double> in, std::span<double> out) const {
  const std::size_t d = in.size();
  std::visit(overloaded{
                 [&](const PaperExample& m) {
                   // 1-based: out_1 = 0, out_2 = x_1^2, out_{n+1} = b_n x_n (n >= 2).
                   out[0] = 0.0;
                   out[1] = in[0] * in[0];
                   for (std::size_t k = 2; k < d; ++k) out[k] = m.b[k - 1] * in[k - 1];
                 },
                 [&](const Contraction& m) {
                   for (std::size_t k = 0; k < d; ++k) {
                     out[k] = m.anchor[k] + m.lambda * (in[k] - m.anchor[k]);
                   }
                 },
                 [&](const Rotation& m) { rotate(in, out, m.theta, m.i, m.j); },
                 [&](const AveragedRotation& m) {
                   rotate(in, out, m.theta, m.i, m.j);
                   for (std::size_t k = 0; k < d; ++k) out[k] = 0.5 * (in[k] + out[k]);
                 },
                 [&](const MonotoneAverage& m) {
                   for (std::size_t k = 0; k < d; ++k) out[k] = 0.5 * (in[k] + m.u[k]);
                 },
                 [&](const Scaling& m) {
                   for (std::size_t k = 0; k < d; ++k) out[k] = m.factor * in[k];
                 },
                 [&](const Identity&) { std::copy(in.begin(), in.end(), out.begin()); },
             },
             kind_);
}

void MapInstance::require_in_domain(const Vector& x) const {
  if (x.dim() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match the map");
  }
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << "point outside the domain of " << name() << " (distance to K "
       << domain_.distance_to(x) << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
}

Vector MapInstance::apply(const Vector& x) const {
  require_in_domain(x);
  std::vector<double> out(dim());
  apply_into(x.coords(), out);
  return Vector(std::move(out));
}

std::size_t MapInstance::support_budget(std::size_t n) const noexcept {
  if (std::holds_alternative<PaperExample>(kind_)) return n >= dim() ? 0 : dim() - n;
  return dim();
}

Vector MapInstance::iterate(const Vector& x0, std::size_t n) const {
  require_in_domain(x0);
  if (n == 0 || std::holds_alternative<Identity>(kind_)) return x0;
  if (x0.support_end() > support_budget(n)) {
    std::ostringstream os;
    os << "truncation budget exceeded: " << n << " iterations need support within the first "
       << support_budget(n) << " coordinates, got " << x0.support_end();
    throw Error(ErrorKind::Truncation, os.str());
  }
  std::vector<double> a(x0.coords().begin(), x0.coords().end());
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < n; ++k) {
    apply_into(a, b);
    a.swap(b);
  }
  return Vector(std::move(a));
}

bool MapInstance::order_compatible() const noexcept {
  return std::holds_alternative<MonotoneAverage>(kind_) ||
         std::holds_alternative<Contraction>(kind_) ||
         std::holds_alternative<Identity>(kind_);
}

MapInstance make_checked_map(MapKind kind, ConvexSet domain, std::size_t samples,
                             std::uint64_t seed) {
  MapInstance map(std::move(kind), std::move(domain));
  const ConvexSet& set = map.domain();
  const auto* isolated = std::get_if<BallPlusPoint>(&set.shape());
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = set.sample(rng, map.support_budget(1));
    if (isolated && x == isolated->extra) continue;
    const Vector y = map.apply(x);
    if (!set.contains(y)) {
      std::ostringstream os;
      os << map.name() << " does not map K into K: T" << x.to_string() << " lies at distance "
         << set.distance_to(y) << " from K";
      throw Error(ErrorKind::Domain, os.str());
    }
  }
  return map;
}

FixedPointSet known_fixed_points(const MapInstance& map) {
  const std::size_t d = map.dim();
  FixedPointSet out;
  std::visit(overloaded{
                 [&](const PaperExample&) { out.points.push_back(Vector(d)); },
                 [&](const Contraction& m) { out.points.push_back(m.anchor); },
                 [&](const Rotation&) { out.points.push_back(Vector(d)); },
                 [&](const AveragedRotation&) { out.points.push_back(Vector(d)); },
                 [&](const MonotoneAverage& m) { out.points.push_back(m.u); },
                 [&](const Scaling& m) {
                   out.points.push_back(Vector(d));
                   out.everything = m.factor == 1.0;
                 },
                 [&](const Identity&) { out.everything = true; },
             },
             map.kind());
  return out;
}

}  // namespace fixpt
