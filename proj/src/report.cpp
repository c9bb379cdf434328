#include "fixpt/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace fixpt {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const Vector& v) {
  return json(std::vector<double>(v.coords().begin(), v.coords().end()));
}

json to_json(const HypothesisReport& r) {
  json j;
  j["hypothesis"] = to_string(r.hypothesis);
  j["verdict"] = to_string(r.verdict);
  j["sample_count"] = r.sample_count;
  j["seed"] = r.seed;
  j["note"] = r.note;
  if (r.witness) {
    json w;
    w["points"] = json::array();
    for (const Vector& p : r.witness->points) w["points"].push_back(to_json(p));
    w["measured"] = r.witness->measured;
    w["threshold"] = r.witness->threshold;
    w["index"] = r.witness->index;
    w["description"] = r.witness->description;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  if (r.empirical_alphas) {
    j["empirical_alphas"] = {{"values", r.empirical_alphas->values},
                             {"claimed_limit", r.empirical_alphas->claimed_limit}};
  } else {
    j["empirical_alphas"] = nullptr;
  }
  return j;
}

json to_json(const CenterResult& c) {
  return {{"center", to_json(c.center)},
          {"radius", c.radius},
          {"solver", to_string(c.solver)},
          {"iterations", c.iterations},
          {"window", {{"start", c.window.start}, {"end", c.window.end}}},
          {"residual", c.residual}};
}

json to_json(const PipelineVerdict& v) {
  json j;
  j["pipeline"] = to_string(v.theorem);
  j["verdict"] = to_string(v.verdict);
  j["hypotheses"] = json::array();
  for (const auto& r : v.reports) j["hypotheses"].push_back(to_json(r));
  j["limit"] = v.limit ? to_json(*v.limit) : json(nullptr);
  j["limit_label"] = "weak-limit proxy (coordinatewise)";
  j["fixed_point_residual"] = optional_number(v.fixed_point_residual);
  j["center_match"] = optional_number(v.center_match);
  j["center"] = v.center ? to_json(*v.center) : json(nullptr);
  j["path_length"] = v.path_length ? json(*v.path_length) : json(nullptr);
  if (v.chain) {
    double longest = 0.0;
    for (std::size_t i = 0; i + 1 < v.chain->nodes.size(); ++i) {
      longest = std::max(longest, distance(v.chain->nodes[i], v.chain->nodes[i + 1]));
    }
    j["chain"] = {{"length", v.chain->length()}, {"max_segment", longest}};
  } else {
    j["chain"] = nullptr;
  }
  j["orbit"] = {{"map", v.orbit.map_id},
                {"graph", v.orbit.graph_id},
                {"x0", to_json(v.orbit.x0)},
                {"iterations", v.orbit.steps()},
                {"final_residual",
                 v.orbit.residuals.empty() ? json(nullptr) : json(v.orbit.residuals.back())}};
  j["notes"] = v.notes;
  return j;
}

json to_json(const Example34Report& r) {
  json j;
  j["pipeline"] = "EXAMPLE34";
  j["verdict"] = to_string(r.overall);
  j["dim"] = r.dim;
  j["samples"] = r.samples;
  j["b"] = r.b;
  const std::pair<const char*, const HypothesisReport*> parts[] = {
      {"edge_preservation", &r.edge_preservation},
      {"nonexpansive_on_edges", &r.nonexpansive},
      {"edge_alpha_bound", &r.edge_bound},
      {"global_exhibit", &r.global_bound}};
  j["hypotheses"] = json::array();
  for (const auto& [label, rep] : parts) {
    json h = to_json(*rep);
    h["label"] = label;
    j["hypotheses"].push_back(h);
  }
  j["nonexpansive_violations"] = r.nonexpansive.verdict == Verdict::Fail ? 1 : 0;
  j["exhibit"] = json::array();
  for (const auto& row : r.table) {
    j["exhibit"].push_back({{"i", row.i},
                            {"alpha_hat", row.alpha_hat},
                            {"edge_bound", row.edge_bound},
                            {"global_ratio", row.global_ratio},
                            {"global_bound", row.global_bound}});
  }
  j["exceed_count"] = r.exceed_count;
  j["notes"] = r.notes;
  return j;
}

json report_header(const std::map<std::string, std::string>& config_echo, std::uint64_t seed) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["config"] = config_echo;
  return j;
}

void write_report(const std::string& path, json doc) {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  doc["timestamp"] = stamp;
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

void write_orbit_csv(const std::string& path, const Orbit& orbit,
                     const std::optional<Vector>& limit) {
  auto out = open_out(path);
  const std::size_t shown = std::min<std::size_t>(8, orbit.x0.dim());
  out << "n,residual,distance_to_limit";
  for (std::size_t k = 0; k < shown; ++k) out << ",x" << k + 1;
  out << '\n';
  for (std::size_t n = 0; n < orbit.points.size(); ++n) {
    out << n << ',';
    if (n < orbit.residuals.size()) out << num(orbit.residuals[n]);
    out << ',';
    if (limit) out << num(distance(orbit.points[n], *limit));
    for (std::size_t k = 0; k < shown; ++k) out << ',' << num(orbit.points[n][k]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

void write_center_csv(const std::string& path, const CenterResult& center) {
  auto out = open_out(path);
  out << "iteration,value\n";
  for (std::size_t k = 0; k < center.trajectory.size(); ++k) {
    out << k << ',' << num(center.trajectory[k]) << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

}  // namespace fixpt
