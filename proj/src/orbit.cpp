#include "fixpt/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fixpt {

Orbit run_orbit(const MapInstance& map, const Vector& x0, std::size_t n,
                const std::string& graph_id) {
  // Validates x0 against the domain.
  (void)map.iterate(x0, 0);
  if (x0.support_end() > map.support_budget(n)) {
    std::ostringstream os;
    os << "truncation budget exceeded: " << n << " iterations need support within the first "
       << map.support_budget(n) << " coordinates, got " << x0.support_end();
    throw Error(ErrorKind::Truncation, os.str());
  }
  Orbit orbit;
  orbit.x0 = x0;
  orbit.map_id = map.name();
  orbit.graph_id = graph_id;
  orbit.points.reserve(n + 1);
  orbit.residuals.reserve(n);
  orbit.points.push_back(x0);
  std::vector<double> a(x0.coords().begin(), x0.coords().end());
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < n; ++k) {
    map.apply_into(a, b);
    a.swap(b);
    orbit.points.emplace_back(a);
    orbit.residuals.push_back(distance(orbit.points[k], orbit.points[k + 1]));
  }
  return orbit;
}

std::optional<Vector> detect_limit(const Orbit& orbit, double tol_cauchy, std::size_t window) {
  const auto& pts = orbit.points;
  if (window == 0 || pts.size() <= 2 * window) {
    throw Error(ErrorKind::Domain, "orbit too short for the Cauchy window");
  }
  const std::size_t first = pts.size() - window;
  for (std::size_t i = first; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!(distance(pts[i], pts[j]) < tol_cauchy)) return std::nullopt;
    }
  }
  return pts.back();
}

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::T35: return "T35";
    case Theorem::T37: return "T37";
    case Theorem::C38: return "C38";
    case Theorem::S4: return "S4";
  }
  return "Unknown";
}

const char* to_string(PipelineOutcome o) {
  switch (o) {
    case PipelineOutcome::Certified: return "CERTIFIED";
    case PipelineOutcome::HypothesisFail: return "HYPOTHESIS_FAIL";
    case PipelineOutcome::NoConvergence: return "NO_CONVERGENCE";
  }
  return "UNKNOWN";
}

const HypothesisReport* PipelineVerdict::find(Hypothesis h) const {
  for (const auto& r : reports) {
    if (r.hypothesis == h) return &r;
  }
  return nullptr;
}

namespace {

Verdict clean(std::size_t samples) {
  return samples >= kMinSamples ? Verdict::Pass : Verdict::Inconclusive;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

HypothesisReport consecutive_edges(const Orbit& orbit, const GraphSpec& graph) {
  HypothesisReport r{Hypothesis::OrbitConsecutiveEdges};
  r.sample_count = orbit.steps();
  r.note = "checked on the realized orbit only";
  for (std::size_t n = 0; n < orbit.steps(); ++n) {
    const Vector& x = orbit.points[n];
    const Vector& y = orbit.points[n + 1];
    if (!has_edge(graph, x, y)) {
      r.verdict = Verdict::Fail;
      r.witness = Witness{{x, y}, distance(x, y), graph.is_proximity() ? graph.eps() : 0.0,
                          n, "(x_n, x_{n+1}) is not an edge"};
      return r;
    }
  }
  r.verdict = clean(r.sample_count);
  return r;
}

// Tail points joined to the limit: an edge of `graph`, or x_n <= limit when
// `order` is given.
HypothesisReport tail_to_limit(const Orbit& orbit, const Vector& limit, const GraphSpec& graph,
                               const Comparator* order) {
  HypothesisReport r{Hypothesis::OrbitToLimitEdges};
  r.note = order ? "tail x_n <= limit, checked on the realized orbit only"
                 : "checked on the realized orbit only";
  const TailWindow w = TailWindow::last_half(orbit.points.size());
  for (std::size_t n = w.start; n <= w.end; ++n) {
    const Vector& x = orbit.points[n];
    ++r.sample_count;
    const bool ok = order ? (*order)(x, limit) : has_edge(graph, x, limit);
    if (!ok) {
      r.verdict = Verdict::Fail;
      r.witness = Witness{{x, limit}, distance(x, limit),
                          graph.is_proximity() ? graph.eps() : 0.0, n,
                          order ? "x_n <= limit fails" : "(x_n, limit) is not an edge"};
      return r;
    }
  }
  r.verdict = clean(r.sample_count);
  return r;
}

void add_scope_notes(PipelineVerdict& v) {
  v.notes.push_back("finite-dimensional proxy: weak convergence read as coordinatewise convergence");
  v.notes.push_back("limit is a weak-limit proxy (coordinatewise)");
  v.notes.push_back(
      "one realized sequence is checked; subsequence quantification is not emulated");
  v.notes.push_back("verifiers are samplers: PASS means no counterexample at the sample size");
}

// Limit, fixed-point residual, tail center and the final outcome.
void conclude(PipelineVerdict& v, const MapInstance& map, const GraphSpec& graph,
              const PipelineConfig& config, const Comparator* tail_order) {
  const Orbit& orbit = v.orbit;
  v.limit = detect_limit(orbit, config.tol_cauchy, config.cauchy_window);
  const TailWindow w = TailWindow::last_half(orbit.points.size());
  if (!v.center) {
    if (map.domain().is_convex()) {
      v.center = asymptotic_center(orbit.points, w, map.domain(), config.center);
    } else {
      v.notes.push_back("asymptotic center skipped: K is not convex");
    }
  }
  if (v.limit) {
    std::vector<double> out(map.dim());
    map.apply_into(v.limit->coords(), out);
    v.fixed_point_residual = distance(Vector(std::move(out)), *v.limit);
    if (v.center) v.center_match = distance(*v.limit, v.center->center);
    v.reports.push_back(tail_to_limit(orbit, *v.limit, graph, tail_order));
  }

  const bool all_pass = std::all_of(v.reports.begin(), v.reports.end(),
                                    [](const auto& r) { return r.verdict == Verdict::Pass; });
  if (!all_pass) {
    v.verdict = PipelineOutcome::HypothesisFail;
  } else if (!v.limit) {
    v.verdict = PipelineOutcome::NoConvergence;
    v.notes.push_back("no limit: the last " + std::to_string(config.cauchy_window) +
                      " iterates are not within tol_cauchy of each other");
  } else if (!(*v.fixed_point_residual < config.tol_fp)) {
    v.verdict = PipelineOutcome::NoConvergence;
    v.notes.push_back("limit is not a fixed point: |T x - x| = " + fmt(*v.fixed_point_residual));
  } else if (!v.center_match || !(*v.center_match < config.tol_center)) {
    v.verdict = PipelineOutcome::NoConvergence;
    v.notes.push_back("limit does not match the asymptotic center of the tail");
  } else {
    v.verdict = PipelineOutcome::Certified;
  }
}

void common_checks(PipelineVerdict& v, const MapInstance& map, const GraphSpec& graph,
                   const PipelineConfig& config, const Comparator& order) {
  const ConvexSet& set = map.domain();
  v.reports.push_back(
      check_edge_preservation(map, graph, set, config.samples, config.seed + 1, order));
  const AlphaEstimate est = estimate_alpha_detailed(map, graph, set, config.alpha_steps,
                                                    config.samples, config.seed + 2, order);
  v.reports.push_back(assess_alpha(est, config.seed + 2));
  v.reports.push_back(assess_regularity(v.orbit.residuals, v.orbit.x0, config.decay_tol));
}

PipelineVerdict reachability_pipeline(Theorem theorem, const MapInstance& map,
                                      const GraphSpec& graph, const Vector& x0,
                                      std::size_t max_length, const PipelineConfig& config,
                                      const Comparator& order, const Comparator* tail_order) {
  if (max_length == 0) throw Error(ErrorKind::Domain, "reachability length L must be >= 1");
  PipelineVerdict v;
  v.theorem = theorem;
  v.path_length = max_length;
  v.orbit = run_orbit(map, x0, config.iterations, graph.name());
  const ConvexSet& set = map.domain();
  const auto& pts = v.orbit.points;

  // Condition (a): T x0 reachable from x0 in at most L steps.
  HypothesisReport seed_report{Hypothesis::ReachabilitySeed};
  seed_report.sample_count = 1;
  if (pts.size() > 1 && !in_reachability_class(pts[0], pts[1], graph, set, max_length, order)) {
    seed_report.verdict = Verdict::Fail;
    seed_report.witness = Witness{{pts[0], pts[1]}, distance(pts[0], pts[1]),
                                  graph.is_proximity() ? graph.eps() : 0.0, 1,
                                  "T x0 is not in the L-step class of x0"};
  } else {
    seed_report.verdict = Verdict::Pass;
  }
  v.reports.push_back(seed_report);

  // Condition (b), step by step.
  HypothesisReport orbit_report{Hypothesis::ReachabilityOrbit};
  orbit_report.note = "checked on the realized orbit only";
  for (std::size_t n = 1; n < pts.size(); ++n) {
    ++orbit_report.sample_count;
    if (!in_reachability_class(pts[n - 1], pts[n], graph, set, max_length, order)) {
      orbit_report.verdict = Verdict::Fail;
      orbit_report.witness = Witness{{pts[n - 1], pts[n]}, distance(pts[n - 1], pts[n]),
                                     graph.is_proximity() ? graph.eps() : 0.0, n,
                                     "x_n is not in the L-step class of x_{n-1}"};
      break;
    }
  }
  if (!orbit_report.witness) orbit_report.verdict = clean(orbit_report.sample_count);
  v.reports.push_back(orbit_report);

  common_checks(v, map, graph, config, order);
  v.reports.push_back(check_continuity(map, set, config.samples, config.seed + 3));
  add_scope_notes(v);
  conclude(v, map, graph, config, tail_order);
  return v;
}

}  // namespace

PipelineVerdict pipeline_T35(const MapInstance& map, const GraphSpec& graph,
                             const Vector& x0, const PipelineConfig& config) {
  PipelineVerdict v;
  v.theorem = Theorem::T35;
  v.orbit = run_orbit(map, x0, config.iterations, graph.name());
  v.reports.push_back(
      check_graph_of_T_in_edges(map, graph, map.domain(), config.samples, config.seed));
  common_checks(v, map, graph, config, componentwise_leq());
  v.reports.push_back(consecutive_edges(v.orbit, graph));
  add_scope_notes(v);
  conclude(v, map, graph, config, nullptr);
  return v;
}

PipelineVerdict pipeline_T37(const MapInstance& map, const GraphSpec& graph,
                             const Vector& x0, std::size_t max_length,
                             const PipelineConfig& config) {
  return reachability_pipeline(Theorem::T37, map, graph, x0, max_length, config,
                               componentwise_leq(), nullptr);
}

PipelineVerdict pipeline_C38(const MapInstance& map, const Vector& x0,
                             const PipelineConfig& config) {
  if (!map.order_compatible()) {
    throw Error(ErrorKind::Precondition, map.name() + " is not order-compatible");
  }
  const Comparator order = componentwise_leq(1e-12);
  PipelineVerdict v = reachability_pipeline(Theorem::C38, map, GraphSpec::order(), x0, 1,
                                            config, order, &order);
  HypothesisReport mono = check_order_monotone_orbit(map, x0, order, config.iterations);
  // Inserted ahead of the tail check so the report order follows the proof.
  v.reports.insert(v.reports.end() - (v.limit ? 1 : 0), mono);
  if (mono.verdict != Verdict::Pass) v.verdict = PipelineOutcome::HypothesisFail;
  return v;
}

PipelineVerdict pipeline_S4(const MapInstance& map, const Vector& x0, double eps,
                            const PipelineConfig& config) {
  const GraphSpec graph = GraphSpec::proximity(eps);
  const ConvexSet& set = map.domain();
  PipelineVerdict v;
  v.theorem = Theorem::S4;
  v.orbit = run_orbit(map, x0, config.iterations, graph.name());

  v.reports.push_back(check_local_nonexpansive(map, set, eps, config.samples, config.seed));

  const Vector tx0 = v.orbit.points.size() > 1 ? v.orbit.points[1] : map.apply(x0);
  PathInK chain = chain_path(x0, tx0, set, graph);
  v.path_length = chain.length();

  // Push the chain forward level by level; every level must stay an eps-chain.
  HypothesisReport push{Hypothesis::ChainPushForward};
  push.note = "checked on the realized orbit only";
  const std::size_t d = map.dim();
  std::vector<std::vector<double>> nodes;
  nodes.reserve(chain.nodes.size());
  for (const Vector& y : chain.nodes) nodes.emplace_back(y.coords().begin(), y.coords().end());
  std::vector<double> buf(d);
  auto segment = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double t = nodes[i][k] - nodes[i + 1][k];
      s += t * t;
    }
    return std::sqrt(s);
  };
  for (std::size_t level = 0; level <= config.iterations && !push.witness; ++level) {
    if (level > 0) {
      for (auto& node : nodes) {
        map.apply_into(node, buf);
        node.swap(buf);
      }
    }
    ++push.sample_count;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double len = segment(i);
      if (!(len < eps)) {
        push.verdict = Verdict::Fail;
        push.witness = Witness{{Vector(nodes[i]), Vector(nodes[i + 1])}, len, eps, level,
                               "segment " + std::to_string(i) +
                                   " of the pushed-forward chain is not an edge"};
        break;
      }
    }
  }
  if (!push.witness) push.verdict = clean(push.sample_count);
  v.reports.push_back(push);
  v.chain = std::move(chain);

  add_scope_notes(v);
  // Radius gate on the tail before the limit conclusions.
  const TailWindow w = TailWindow::last_half(v.orbit.points.size());
  v.center = asymptotic_center(v.orbit.points, w, set, config.center);
  HypothesisReport gate{Hypothesis::RadiusGate};
  gate.sample_count = w.size();
  gate.note = "tail radius " + fmt(v.center->radius) + " against eps " + fmt(eps);
  if (v.center->radius < eps) {
    gate.verdict = Verdict::Pass;
  } else {
    gate.verdict = Verdict::Fail;
    gate.witness = Witness{{v.center->center}, v.center->radius, eps, w.start,
                           "asymptotic radius of the tail is not below eps"};
  }
  v.reports.push_back(gate);
  conclude(v, map, graph, config, nullptr);
  return v;
}

}  // namespace fixpt
