#include "fixpt/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "fixpt/report.hpp"

namespace fixpt {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_status(PipelineOutcome o) {
  switch (o) {
    case PipelineOutcome::Certified: return kExitOk;
    case PipelineOutcome::HypothesisFail: return kExitHypothesisFail;
    case PipelineOutcome::NoConvergence: return kExitNoConvergence;
  }
  return kExitError;
}

std::string output_root() {
  const char* env = std::getenv("FIXPT_OUTPUT_ROOT");
  return env && *env ? env : "fixpt_out";
}

std::string resolve_output_dir(const std::string& override_dir, const std::string& configured,
                               const std::string& fallback_name) {
  if (!override_dir.empty()) return override_dir;
  if (configured.empty()) return (fs::path(output_root()) / fallback_name).string();
  const fs::path p(configured);
  return p.is_absolute() ? p.string() : (fs::path(output_root()) / p).string();
}

namespace {

RunOutcome error_outcome(const std::string& reason, const std::string& dir = "") {
  return RunOutcome{kExitError, "ERROR", reason, dir};
}

std::string failing(const std::vector<HypothesisReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Pass) continue;
    if (!out.empty()) out += ",";
    out += std::string(to_string(r.hypothesis)) + "=" + to_string(r.verdict);
  }
  return out;
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + dir + ": " + ec.message());
}

RunOutcome run_pipeline(const ExperimentConfig& config, PipelineKind kind, const MapInstance& map,
                        const std::string& dir, json doc, const RunOptions& options) {
  const PipelineConfig& run = config.run;
  const std::string report_path = (fs::path(dir) / "report.json").string();
  const std::string orbit_path = (fs::path(dir) / "orbit.csv").string();
  const std::string center_path = (fs::path(dir) / "center.csv").string();

  if (kind == PipelineKind::VerifyOnly) {
    std::vector<HypothesisReport> reports;
    const ConvexSet& set = map.domain();
    reports.push_back(check_graph_of_T_in_edges(map, config.graph, set, run.samples, run.seed));
    reports.push_back(
        check_edge_preservation(map, config.graph, set, run.samples, run.seed + 1));
    reports.push_back(assess_alpha(estimate_alpha_detailed(map, config.graph, set,
                                                           run.alpha_steps, run.samples,
                                                           run.seed + 2),
                                   run.seed + 2));
    reports.push_back(check_continuity(map, set, run.samples, run.seed + 3));
    if (config.x0.dim() > 0) {
      reports.push_back(check_asymptotic_regularity(map, config.x0, run.iterations, run.decay_tol));
    }
    bool pass = true;
    bool fail = false;
    doc["hypotheses"] = json::array();
    for (const auto& r : reports) {
      doc["hypotheses"].push_back(to_json(r));
      pass = pass && r.verdict == Verdict::Pass;
      fail = fail || r.verdict == Verdict::Fail;
    }
    const Verdict overall = pass ? Verdict::Pass : fail ? Verdict::Fail : Verdict::Inconclusive;
    doc["pipeline"] = "VERIFY_ONLY";
    doc["verdict"] = to_string(overall);
    doc["notes"] = {"verifiers are samplers: PASS means no counterexample at the sample size"};
    write_report(report_path, doc);
    return RunOutcome{pass ? kExitOk : kExitHypothesisFail, to_string(overall), failing(reports),
                      dir};
  }

  if (kind == PipelineKind::CenterOnly) {
    const Orbit orbit = run_orbit(map, config.x0, run.iterations, config.graph.name());
    const TailWindow w = TailWindow::last_half(orbit.points.size());
    const CenterResult c = options.grid_oracle
                               ? grid_oracle(orbit.points, w, map.domain())
                               : asymptotic_center(orbit.points, w, map.domain(), run.center);
    doc["pipeline"] = "CENTER_ONLY";
    doc["verdict"] = "COMPUTED";
    doc["center"] = to_json(c);
    doc["orbit"] = {{"map", orbit.map_id},
                    {"x0", to_json(orbit.x0)},
                    {"iterations", orbit.steps()}};
    write_report(report_path, doc);
    write_orbit_csv(orbit_path, orbit, std::nullopt);
    write_center_csv(center_path, c);
    return RunOutcome{kExitOk, "COMPUTED", "", dir};
  }

  PipelineVerdict v;
  switch (kind) {
    case PipelineKind::T35: v = pipeline_T35(map, config.graph, config.x0, run); break;
    case PipelineKind::T37: v = pipeline_T37(map, config.graph, config.x0, config.L, run); break;
    case PipelineKind::C38: v = pipeline_C38(map, config.x0, run); break;
    case PipelineKind::S4: v = pipeline_S4(map, config.x0, config.eps, run); break;
    default: break;
  }
  doc.update(to_json(v));
  write_report(report_path, doc);
  write_orbit_csv(orbit_path, v.orbit, v.limit);
  if (v.center) write_center_csv(center_path, *v.center);

  std::string reason = failing(v.reports);
  if (reason.empty() && v.verdict != PipelineOutcome::Certified && !v.notes.empty()) {
    reason = v.notes.back();
  }
  return RunOutcome{exit_status(v.verdict), to_string(v.verdict), reason, dir};
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options,
                          const std::string& fallback_name) {
  const std::string dir = resolve_output_dir(options.output_dir, config.output_dir, fallback_name);
  try {
    const std::optional<PipelineKind> kind =
        options.force_pipeline ? options.force_pipeline : config.pipeline;
    if (!kind) throw Error(ErrorKind::Config, "pipeline: missing required field");
    if (*kind != PipelineKind::VerifyOnly && config.x0.dim() == 0) {
      throw Error(ErrorKind::Config, "x0: missing required field");
    }
    if (options.grid_oracle && *kind != PipelineKind::CenterOnly) {
      throw Error(ErrorKind::Config, "--grid-oracle applies to the center command only");
    }
    const MapInstance map = config.make_map();
    auto echo = config.echo;
    echo["pipeline"] = to_string(*kind);
    prepare_dir(dir);
    return run_pipeline(config, *kind, map, dir, report_header(echo, config.run.seed), options);
  } catch (const Error& e) {
    return error_outcome(std::string(to_string(e.kind())) + ": " + e.what(), dir);
  } catch (const std::exception& e) {
    return error_outcome(std::string("internal: ") + e.what(), dir);
  }
}

RunOutcome run_config_file(const std::string& path, const RunOptions& options) {
  ExperimentConfig config;
  try {
    config = load_config(path);
  } catch (const Error& e) {
    return error_outcome(std::string(to_string(e.kind())) + ": " + e.what());
  }
  return run_experiment(config, options, fs::path(path).stem().string());
}

std::vector<RunOutcome> run_sweep(const std::vector<std::string>& paths,
                                  const RunOptions& options) {
  std::vector<RunOutcome> out(paths.size());
  std::vector<std::optional<ExperimentConfig>> configs(paths.size());
  std::set<std::string> dirs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      configs[i] = load_config(paths[i]);
    } catch (const Error& e) {
      out[i] = error_outcome(std::string(to_string(e.kind())) + ": " + e.what());
      continue;
    }
    // A shared override would make runs overwrite each other; nest instead.
    RunOptions own = options;
    const std::string stem = fs::path(paths[i]).stem().string();
    if (!own.output_dir.empty()) own.output_dir = (fs::path(own.output_dir) / stem).string();
    const std::string dir = resolve_output_dir(own.output_dir, configs[i]->output_dir, stem);
    if (!dirs.insert(fs::weakly_canonical(dir).string()).second) {
      out[i] = error_outcome("config: output_dir: " + dir + " is shared with another sweep entry");
      configs[i].reset();
    }
  }
  std::vector<std::future<RunOutcome>> jobs(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!configs[i]) continue;
    RunOptions own = options;
    const std::string stem = fs::path(paths[i]).stem().string();
    if (!own.output_dir.empty()) own.output_dir = (fs::path(own.output_dir) / stem).string();
    jobs[i] = std::async(std::launch::async, [cfg = *configs[i], own, stem] {
      return run_experiment(cfg, own, stem);
    });
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (jobs[i].valid()) out[i] = jobs[i].get();
  }
  return out;
}

RunOutcome run_example34(std::size_t samples, std::uint64_t seed, const std::string& out_dir) {
  const std::string dir = resolve_output_dir(out_dir, "", "example34");
  try {
    const Example34Report rep = verify_example34(samples, seed);
    prepare_dir(dir);
    json doc = report_header({{"command", "verify-example34"},
                              {"samples", std::to_string(samples)},
                              {"seed", std::to_string(seed)}},
                             seed);
    doc.update(to_json(rep));
    write_report((fs::path(dir) / "report.json").string(), doc);
    const int status = rep.overall == Verdict::Pass ? kExitOk : kExitHypothesisFail;
    std::string reason;
    if (rep.overall != Verdict::Pass) {
      reason = failing({rep.edge_preservation, rep.nonexpansive, rep.edge_bound, rep.global_bound});
    }
    return RunOutcome{status, to_string(rep.overall), reason, dir};
  } catch (const Error& e) {
    return error_outcome(std::string(to_string(e.kind())) + ": " + e.what(), dir);
  }
}

RunOutcome emit_plot_data(const std::string& run_dir) {
  const fs::path root(run_dir);
  const fs::path report = root / "report.json";
  if (!fs::exists(report)) return error_outcome("io: no report.json in " + run_dir, run_dir);
  json doc;
  try {
    std::ifstream in(report);
    doc = json::parse(in);
  } catch (const std::exception& e) {
    return error_outcome(std::string("io: unreadable report.json: ") + e.what(), run_dir);
  }
  const fs::path plot = root / "plot";
  try {
    prepare_dir(plot.string());
    std::size_t written = 0;

    if (fs::exists(root / "orbit.csv")) {
      std::ifstream in(root / "orbit.csv");
      std::ofstream out(plot / "residual_decay.csv");
      out << "n,residual\n";
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string n, g;
        std::getline(ss, n, ',');
        std::getline(ss, g, ',');
        if (!g.empty()) out << n << ',' << g << '\n';
      }
      ++written;
    }

    if (doc.contains("hypotheses")) {
      for (const auto& h : doc["hypotheses"]) {
        if (!h.contains("empirical_alphas") || h["empirical_alphas"].is_null()) continue;
        std::ofstream out(plot / "alpha.csv");
        out << "i,alpha_hat\n";
        const auto& vals = h["empirical_alphas"]["values"];
        for (std::size_t i = 0; i < vals.size(); ++i) {
          out << i + 1 << ',' << vals[i].dump() << '\n';
        }
        ++written;
        break;
      }
    }

    if (fs::exists(root / "center.csv")) {
      fs::copy_file(root / "center.csv", plot / "center_values.csv",
                    fs::copy_options::overwrite_existing);
      ++written;
    }
    if (written == 0) return error_outcome("io: no plottable series in " + run_dir, run_dir);
  } catch (const std::exception& e) {
    return error_outcome(std::string("io: ") + e.what(), run_dir);
  }
  return RunOutcome{kExitOk, "WRITTEN", "", plot.string()};
}

}  // namespace fixpt
