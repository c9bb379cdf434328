#include "fixpt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fixpt {

const char* to_string(PipelineKind k) {
  switch (k) {
    case PipelineKind::T35: return "T35";
    case PipelineKind::T37: return "T37";
    case PipelineKind::C38: return "C38";
    case PipelineKind::S4: return "S4";
    case PipelineKind::VerifyOnly: return "VERIFY_ONLY";
    case PipelineKind::CenterOnly: return "CENTER_ONLY";
  }
  return "UNKNOWN";
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::Config, key + ": " + what);
}

std::string canonical(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string canonical(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += canonical(v[i]);
  }
  return out;
}

// Reads entries by key, remembering which ones were used.
class Fields {
 public:
  explicit Fields(const std::vector<ConfigEntry>& entries) {
    for (const auto& e : entries) by_key_[e.key] = e;
  }

  bool has(const std::string& key) const { return by_key_.count(key) != 0; }

  const ConfigEntry& entry(const std::string& key) {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) fail(key, "missing required field");
    used_.insert(key);
    return it->second;
  }

  std::string text(const std::string& key) { return entry(key).value; }
  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  double number(const std::string& key) {
    const ConfigEntry& e = entry(key);
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      fail(key, "expected a finite number, got '" + e.value + "'" + where(e));
    }
    return v;
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t integer(const std::string& key) {
    const ConfigEntry& e = entry(key);
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      fail(key, "expected a nonnegative integer, got '" + e.value + "'" + where(e));
    }
    return v;
  }
  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    return has(key) ? integer(key) : fallback;
  }

  std::vector<double> list(const std::string& key) {
    const ConfigEntry& e = entry(key);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() ||
          !std::isfinite(v)) {
        fail(key, "expected a comma-separated list of numbers, got '" + e.value + "'" +
                      where(e));
      }
      out.push_back(v);
    }
    if (out.empty()) fail(key, "empty coordinate list" + where(e));
    return out;
  }

  Vector vec(const std::string& key, std::size_t dim) {
    const auto v = list(key);
    if (v.size() > dim) {
      fail(key, std::to_string(v.size()) + " coordinates exceed space.dim = " +
                    std::to_string(dim));
    }
    return Vector::padded(v, dim);
  }

  void reject_unused() const {
    for (const auto& [key, e] : by_key_) {
      if (!used_.count(key)) fail(key, "unknown or inapplicable key" + where(e));
    }
  }

 private:
  static std::string where(const ConfigEntry& e) {
    return e.line ? " (line " + std::to_string(e.line) + ")" : "";
  }

  std::map<std::string, ConfigEntry> by_key_;
  std::set<std::string> used_;
};

// Runs a module constructor and reattributes its errors to `key`.
template <class F>
auto at(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(key, e.what());
  }
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text) {
  std::vector<ConfigEntry> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config,
                  "line " + std::to_string(line) + ": expected 'key = value'");
    }
    ConfigEntry e{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line};
    if (e.key.empty()) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": empty key");
    }
    if (!seen.insert(e.key).second) fail(e.key, "duplicate key (line " + std::to_string(line) + ")");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Config, path + ": " + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw Error(ErrorKind::Config, "config: report has no config object");
    }
    std::vector<ConfigEntry> out;
    for (const auto& [key, value] : doc["config"].items()) {
      out.push_back({key, value.is_string() ? value.get<std::string>() : value.dump(), 0});
    }
    return out;
  }
  return parse_config_text(text);
}

MapInstance ExperimentConfig::make_map() const {
  return at("map", [&] { return make_checked_map(map, set, 1000, run.seed); });
}

ExperimentConfig build_config(const std::vector<ConfigEntry>& entries) {
  Fields f(entries);
  ExperimentConfig c;
  auto& echo = c.echo;

  c.dim = f.integer("space.dim", 16);
  if (c.dim == 0) fail("space.dim", "must be positive");
  echo["space.dim"] = std::to_string(c.dim);
  c.p = f.number("space.p", 2.0);
  at("space.p", [&] { return NormTag(c.p); });
  echo["space.p"] = canonical(c.p);
  const std::size_t d = c.dim;

  // set.*
  const std::string set_kind = f.text("set.kind");
  echo["set.kind"] = set_kind;
  if (set_kind == "ball" || set_kind == "ball_plus_point") {
    const Vector center = f.has("set.center") ? f.vec("set.center", d) : Vector(d);
    const double radius = f.number("set.radius");
    echo["set.center"] = canonical(center.coords());
    echo["set.radius"] = canonical(radius);
    if (set_kind == "ball") {
      c.set = at("set", [&] { return ConvexSet::ball(center, radius); });
    } else {
      const Vector extra = f.vec("set.extra", d);
      echo["set.extra"] = canonical(extra.coords());
      c.set = at("set", [&] { return ConvexSet::ball_plus_point(center, radius, extra); });
    }
  } else if (set_kind == "box" || set_kind == "order_interval") {
    const Vector lo = f.vec("set.lo", d);
    const Vector hi = f.vec("set.hi", d);
    echo["set.lo"] = canonical(lo.coords());
    echo["set.hi"] = canonical(hi.coords());
    c.set = at("set", [&] {
      return set_kind == "box" ? ConvexSet::box(lo, hi) : ConvexSet::order_interval(lo, hi);
    });
  } else {
    fail("set.kind", "unknown set kind '" + set_kind +
                         "' (ball, ball_plus_point, box, order_interval)");
  }

  // graph.*
  const std::string graph_kind = f.text("graph.kind", "full");
  echo["graph.kind"] = graph_kind;
  if (graph_kind == "full") {
    c.graph = GraphSpec::full();
  } else if (graph_kind == "proximity") {
    const double eps = f.number("graph.eps");
    echo["graph.eps"] = canonical(eps);
    c.graph = at("graph.eps", [&] { return GraphSpec::proximity(eps); });
  } else if (graph_kind == "order") {
    c.graph = GraphSpec::order();
  } else {
    fail("graph.kind", "unknown graph kind '" + graph_kind + "' (full, proximity, order)");
  }

  // map.*
  const std::string map_kind = f.text("map.kind");
  echo["map.kind"] = map_kind;
  auto plane = [&](std::size_t& i, std::size_t& j) {
    if (!f.has("map.plane")) {
      echo["map.plane"] = "0,1";
      return;
    }
    const auto v = f.list("map.plane");
    if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) ||
        v[1] != std::floor(v[1])) {
      fail("map.plane", "expected two coordinate indices 'i,j'");
    }
    i = static_cast<std::size_t>(v[0]);
    j = static_cast<std::size_t>(v[1]);
    echo["map.plane"] = std::to_string(i) + "," + std::to_string(j);
  };
  if (map_kind == "paper_example") {
    std::vector<double> b;
    if (f.has("map.b")) {
      b = f.list("map.b");
      if (b.size() != d) {
        fail("map.b", "needs exactly space.dim = " + std::to_string(d) + " coefficients");
      }
    } else {
      const std::string rule = f.text("map.b_rule", "half");
      if (rule == "half") {
        b = default_paper_coefficients(d);
      } else if (rule == "exp") {
        b = exp_paper_coefficients(d);
      } else {
        fail("map.b_rule", "unknown rule '" + rule + "' (half, exp)");
      }
    }
    echo["map.b"] = canonical(b);
    c.map = PaperExample{std::move(b)};
  } else if (map_kind == "contraction") {
    Contraction m{f.number("map.lambda"), f.has("map.anchor") ? f.vec("map.anchor", d) : Vector(d)};
    echo["map.lambda"] = canonical(m.lambda);
    echo["map.anchor"] = canonical(m.anchor.coords());
    c.map = std::move(m);
  } else if (map_kind == "rotation") {
    Rotation m{f.number("map.theta")};
    echo["map.theta"] = canonical(m.theta);
    plane(m.i, m.j);
    c.map = m;
  } else if (map_kind == "averaged_rotation") {
    AveragedRotation m{f.number("map.theta")};
    echo["map.theta"] = canonical(m.theta);
    plane(m.i, m.j);
    c.map = m;
  } else if (map_kind == "monotone_average") {
    MonotoneAverage m{f.vec("map.u", d)};
    echo["map.u"] = canonical(m.u.coords());
    c.map = std::move(m);
  } else if (map_kind == "scaling") {
    Scaling m{f.number("map.factor")};
    echo["map.factor"] = canonical(m.factor);
    c.map = m;
  } else if (map_kind == "identity") {
    c.map = Identity{};
  } else {
    fail("map.kind", "unknown map kind '" + map_kind +
                         "' (paper_example, contraction, rotation, averaged_rotation, "
                         "monotone_average, scaling, identity)");
  }
  // Parameter checks only; the sampled self-map check runs in make_map.
  at("map", [&] { return MapInstance(c.map, c.set); });

  // pipeline and run parameters
  if (f.has("pipeline")) {
    const std::string name = f.text("pipeline");
    static const std::pair<const char*, PipelineKind> kinds[] = {
        {"T35", PipelineKind::T35},          {"T37", PipelineKind::T37},
        {"C38", PipelineKind::C38},          {"S4", PipelineKind::S4},
        {"VERIFY_ONLY", PipelineKind::VerifyOnly}, {"CENTER_ONLY", PipelineKind::CenterOnly}};
    for (const auto& [label, kind] : kinds) {
      if (name == label) c.pipeline = kind;
    }
    if (!c.pipeline) {
      fail("pipeline", "unknown pipeline '" + name +
                           "' (T35, T37, C38, S4, VERIFY_ONLY, CENTER_ONLY)");
    }
    echo["pipeline"] = name;
  }

  if (f.has("x0")) {
    c.x0 = f.vec("x0", d);
    if (!c.set.contains(c.x0)) {
      fail("x0", "lies outside K (distance " + canonical(c.set.distance_to(c.x0)) + ")");
    }
    echo["x0"] = canonical(c.x0.coords());
  } else if (c.pipeline && *c.pipeline != PipelineKind::VerifyOnly) {
    fail("x0", "missing required field");
  }

  PipelineConfig& r = c.run;
  r.iterations = f.integer("iterations", r.iterations);
  r.seed = f.integer("seed", r.seed);
  r.samples = f.integer("samples", r.samples);
  r.tol_fp = f.number("tol.fp", r.tol_fp);
  r.tol_center = f.number("tol.center", r.tol_center);
  r.tol_cauchy = f.number("tol.cauchy", r.tol_cauchy);
  r.decay_tol = f.number("tol.decay", r.decay_tol);
  r.cauchy_window = f.integer("cauchy.window", r.cauchy_window);
  r.alpha_steps = f.integer("alpha.steps", r.alpha_steps);
  r.center.tol = f.number("center.tol", r.center.tol);
  r.center.max_iter = f.integer("center.max_iter", r.center.max_iter);
  r.center.stall_window = f.integer("center.stall_window", r.center.stall_window);
  for (const auto& [key, v] : {std::pair{"tol.fp", r.tol_fp}, {"tol.center", r.tol_center},
                               {"tol.cauchy", r.tol_cauchy}, {"tol.decay", r.decay_tol},
                               {"center.tol", r.center.tol}}) {
    if (!(v > 0.0)) fail(key, "must be positive");
  }
  if (r.cauchy_window == 0) fail("cauchy.window", "must be positive");
  if (r.alpha_steps == 0) fail("alpha.steps", "must be positive");
  if (r.iterations <= 2 * r.cauchy_window || r.iterations < 8) {
    fail("iterations", "must exceed 2 * cauchy.window and be at least 8");
  }
  echo["iterations"] = std::to_string(r.iterations);
  echo["seed"] = std::to_string(r.seed);
  echo["samples"] = std::to_string(r.samples);
  echo["tol.fp"] = canonical(r.tol_fp);
  echo["tol.center"] = canonical(r.tol_center);
  echo["tol.cauchy"] = canonical(r.tol_cauchy);
  echo["tol.decay"] = canonical(r.decay_tol);
  echo["cauchy.window"] = std::to_string(r.cauchy_window);
  echo["alpha.steps"] = std::to_string(r.alpha_steps);
  echo["center.tol"] = canonical(r.center.tol);
  echo["center.max_iter"] = std::to_string(r.center.max_iter);
  echo["center.stall_window"] = std::to_string(r.center.stall_window);

  const bool t37 = c.pipeline == PipelineKind::T37;
  const bool s4 = c.pipeline == PipelineKind::S4;
  if (t37) {
    c.L = f.integer("L");
    if (c.L == 0) fail("L", "must be at least 1");
    echo["L"] = std::to_string(c.L);
  }
  if (s4) {
    c.eps = f.number("eps");
    if (!(c.eps > 0.0)) fail("eps", "must be positive");
    echo["eps"] = canonical(c.eps);
  }
  if (c.pipeline == PipelineKind::C38 && !c.graph.is_order()) {
    fail("graph.kind", "C38 runs on the order graph");
  }
  if (s4 && !c.graph.is_full() && !(c.graph.is_proximity() && c.graph.eps() == c.eps)) {
    fail("graph.kind", "S4 builds its own proximity graph from eps");
  }
  c.output_dir = f.text("output_dir", "");
  f.reject_unused();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  return build_config(read_config_file(path));
}

}  // namespace fixpt
