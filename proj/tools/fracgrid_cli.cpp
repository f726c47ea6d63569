// fracgrid: fractional reaction-diffusion runs, memory-strategy benchmarks and
// schedule inspection from the command line.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fracgrid/benchmark.hpp"
#include "fracgrid/config_io.hpp"
#include "fracgrid/csv_writer.hpp"
#include "fracgrid/errors.hpp"
#include "fracgrid/format.hpp"
#include "fracgrid/manifest.hpp"
#include "fracgrid/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace fracgrid;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDivergence = 3,
  kIoFailure = 4,
};

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  ConfigOverrides overrides;
};

void add_simulation_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--gamma", o.overrides.gamma, "Anomalous diffusion exponent in (0, 1]");
  cmd->add_option("--alpha", o.overrides.alpha, "Diffusivity");
  cmd->add_option("--beta", o.overrides.beta, "Linear decay rate");
  cmd->add_option("--dt", o.overrides.dt, "Time step");
  cmd->add_option("--dx", o.overrides.dx, "Grid spacing");
  cmd->add_option("--grid", o.overrides.grid, "Grid size NXxNY");
  cmd->add_option("--steps", o.overrides.steps, "Number of time steps");
  cmd->add_option("--memory", o.overrides.memory, "full | short:L | adaptive:a");
  cmd->add_option("--source", o.overrides.sources, "Initial value j,l=value (repeatable)");
  cmd->add_option("--initial", o.overrides.initial_csv, "Dense initial field (matrix CSV)");
  cmd->add_option("--snapshot-every", o.overrides.snapshot_every, "Snapshot cadence in steps");
  cmd->add_option("--memory-cap-bytes", o.overrides.memory_cap_bytes,
                  "Refuse runs whose stencil history exceeds this many bytes");
}

nlohmann::json file_document(const CommonOptions& o) {
  return o.config_path.empty() ? nlohmann::json() : load_config_document(o.config_path);
}

std::string out_path(const CommonOptions& o, const std::string& name) {
  return (fs::path(o.out_dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message(), dir);
}

std::string gamma_tag(double gamma) { return format_double(gamma); }

int cmd_simulate(const CommonOptions& o, bool write_snapshots, std::size_t log_every) {
  RunManifest manifest{.command = "simulate", .started_at = utc_timestamp()};
  const SimulationConfig config = resolve_config(nlohmann::json(), file_document(o), o.overrides);
  if (auto warning = stability_warning(config)) std::cerr << "warning: " << *warning << "\n";
  manifest.config = config_to_json(config);
  ensure_dir(o.out_dir);

  StepObserver observer;
  if (log_every > 0) {
    observer = [&](std::size_t k, const Grid2D& grid) {
      if (k % log_every == 0) {
        std::cerr << "step " << k << "/" << config.n_steps << "  max|u|=" << grid.max_abs()
                  << "  mass=" << grid.total() << "\n";
      }
    };
  }
  const SimulationResult result = run(config, observer);
  const auto [fj, fl] = focus_cell(config);

  auto emit = [&](const std::string& name, const std::string& contents) {
    const std::string path = out_path(o, name);
    write_text_file(path, contents);
    manifest.artifacts.push_back(path);
  };
  emit("final_grid.csv", format_grid_csv(result.final_grid));
  const auto profile = slice_profile(result.final_grid, fl);
  emit("profile.csv", format_profile_csv(profile));

  std::vector<double> times, values;
  for (const auto& snap : result.snapshots) {
    times.push_back(static_cast<double>(snap.step) * config.dt);
    values.push_back(snap.grid(fj, fl));
  }
  emit("focus_series.csv", format_series_csv("time,value", times, values));

  if (write_snapshots) {
    ensure_dir(out_path(o, "snapshots"));
    for (const auto& snap : result.snapshots) {
      char name[48];
      std::snprintf(name, sizeof name, "snapshots/step_%06zu.csv", snap.step);
      emit(name, format_grid_csv(snap.grid));
    }
  }

  std::vector<double> xs(profile.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) * config.dx;
  const std::string label = "γ=" + gamma_tag(config.gamma);
  emit("profile.svg", render_svg_lineplot({{label, xs, profile}},
                                          {.title = "Final profile through source row",
                                           .x_label = "x",
                                           .y_label = "u"}));
  emit("focus_series.svg", render_svg_lineplot({{label, times, values}},
                                               {.title = "Source cell over time",
                                                .x_label = "t",
                                                .y_label = "u"}));

  manifest.finished_at = utc_timestamp();
  write_manifest(manifest, out_path(o, "manifest.json"));
  std::cout << "simulated " << config.n_steps << " steps (" << format_strategy(config.strategy)
            << ") in " << result.elapsed_seconds << " s; artifacts in " << o.out_dir << "\n";
  return kOk;
}

int cmd_benchmark(const CommonOptions& o, const std::vector<double>& gammas,
                  const std::vector<double>& lengths, const std::vector<std::uint64_t>& bases,
                  const ComparisonOptions& options) {
  RunManifest manifest{.command = "benchmark", .started_at = utc_timestamp()};
  const SimulationConfig base =
      resolve_config(config_to_json(comparison_preset(gammas.front())), file_document(o),
                     o.overrides);
  manifest.config = config_to_json(base);
  manifest.config["sweep"] = {{"gammas", gammas},
                              {"short_lengths", lengths},
                              {"adaptive_bases", bases},
                              {"repeats", options.repeats},
                              {"parallel", options.parallel}};
  ensure_dir(o.out_dir);

  const auto records = run_comparison(base, gammas, lengths, bases, options);
  const std::string csv = out_path(o, "benchmark.csv");
  write_benchmark_csv(records, csv);
  manifest.artifacts.push_back(csv);

  std::size_t failures = 0;
  std::vector<PlotSeries> series;
  for (double gamma : gammas) {
    std::map<std::string, PlotSeries> by_strategy;
    for (const auto& r : records) {
      if (r.gamma != gamma) continue;
      if (r.failed) {
        ++failures;
        std::cerr << "failed: " << r.strategy << ":" << format_double(r.param) << " gamma="
                  << format_double(gamma) << ": " << r.failure << "\n";
        continue;
      }
      // Zero-error points (exact settings) cannot sit on a log axis.
      if (r.strategy == "full" || r.err_l2_pct <= 0.0 || r.elapsed_s <= 0.0) continue;
      auto& s = by_strategy[r.strategy];
      s.name = r.strategy + " γ=" + gamma_tag(gamma);
      s.x.push_back(r.elapsed_s);
      s.y.push_back(r.err_l2_pct);
    }
    std::vector<PlotSeries> per_gamma;
    for (auto& [name, s] : by_strategy) {
      per_gamma.push_back(s);
      series.push_back(std::move(s));
    }
    if (per_gamma.empty()) continue;
    const std::string svg = out_path(o, "error_vs_time_gamma_" + gamma_tag(gamma) + ".svg");
    emit_svg_lineplot(per_gamma,
                      {.title = "Error vs run time, γ=" + gamma_tag(gamma),
                       .x_label = "run time (s)",
                       .y_label = "L2 error (%)",
                       .log_y = true},
                      svg);
    manifest.artifacts.push_back(svg);
  }
  if (!series.empty()) {
    const std::string svg = out_path(o, "error_vs_time.svg");
    emit_svg_lineplot(series,
                      {.title = "Short vs adaptive memory",
                       .x_label = "run time (s)",
                       .y_label = "L2 error (%)",
                       .log_y = true,
                       .height = 520},
                      svg);
    manifest.artifacts.push_back(svg);
  }

  manifest.finished_at = utc_timestamp();
  write_manifest(manifest, out_path(o, "manifest.json"));
  std::cout << "wrote " << records.size() << " records to " << csv;
  if (failures > 0) std::cout << " (" << failures << " failed)";
  std::cout << "\n";
  return kOk;
}

int cmd_sweep_gamma(const CommonOptions& o, const std::vector<double>& gammas) {
  RunManifest manifest{.command = "sweep-gamma", .started_at = utc_timestamp()};
  const SimulationConfig base = resolve_config(config_to_json(profile_preset(gammas.front())),
                                               file_document(o), o.overrides);
  manifest.config = config_to_json(base);
  manifest.config["sweep"] = {{"gammas", gammas}};
  ensure_dir(o.out_dir);

  const auto traces = gamma_sweep(base, gammas);
  std::vector<PlotSeries> profiles, timelines;
  for (const auto& t : traces) {
    const std::string tag = gamma_tag(t.gamma);
    const std::string profile_csv = out_path(o, "profile_gamma_" + tag + ".csv");
    write_profile_csv(t.profile, profile_csv);
    const std::string trace_csv = out_path(o, "trace_gamma_" + tag + ".csv");
    write_text_file(trace_csv, format_series_csv("time,value", t.times, t.focus_values));
    manifest.artifacts.push_back(profile_csv);
    manifest.artifacts.push_back(trace_csv);

    std::vector<double> xs(t.profile.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) * base.dx;
    profiles.push_back({"γ=" + tag, xs, t.profile});
    timelines.push_back({"γ=" + tag, t.times, t.focus_values});
    std::cout << "gamma=" << tag << "  final source value=" << format_double(t.focus_values.back())
              << "\n";
  }
  const std::string profile_svg = out_path(o, "profiles.svg");
  emit_svg_lineplot(profiles, {.title = "Profiles at final time", .x_label = "x", .y_label = "u"},
                    profile_svg);
  const std::string trace_svg = out_path(o, "traces.svg");
  emit_svg_lineplot(timelines, {.title = "Source cell over time", .x_label = "t", .y_label = "u"},
                    trace_svg);
  manifest.artifacts.push_back(profile_svg);
  manifest.artifacts.push_back(trace_svg);

  manifest.finished_at = utc_timestamp();
  write_manifest(manifest, out_path(o, "manifest.json"));
  return kOk;
}

int cmd_schedule(std::uint64_t k, const std::string& memory, double dt, const std::string& out) {
  const MemoryStrategy strategy = parse_strategy(memory);
  const MemorySchedule schedule = make_schedule(strategy, k, dt);
  const std::string csv = format_schedule_csv(schedule);
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    write_text_file(out, csv);
  }
  const CoverageStats stats = coverage_report(schedule, k);
  std::cerr << "entries=" << schedule.size() << " weight_sum=" << stats.weight_sum
            << " gaps=" << stats.gap_count << " overlaps=" << stats.overlap_count << "\n";
  if (!stats.gap_indices.empty()) {
    std::cerr << "gap indices:";
    for (auto m : stats.gap_indices) std::cerr << ' ' << m;
    std::cerr << "\n";
  }
  if (!stats.overlap_indices.empty()) {
    std::cerr << "overlap indices:";
    for (auto m : stats.overlap_indices) std::cerr << ' ' << m;
    std::cerr << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional reaction-diffusion solver with full, short and adaptive memory"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions sim_opts;
  bool write_snapshots = false;
  std::size_t log_every = 0;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write CSV/SVG artifacts");
  add_simulation_flags(simulate, sim_opts);
  simulate->add_flag("--write-snapshots", write_snapshots, "Write every snapshot grid as CSV");
  simulate->add_option("--log-every", log_every, "Log progress every N steps (0 = quiet)");

  CommonOptions bench_opts;
  std::vector<double> bench_gammas{0.5, 0.75, 0.9, 1.0};
  std::vector<double> lengths = kDefaultShortLengths;
  std::vector<std::uint64_t> bases = kDefaultAdaptiveBases;
  ComparisonOptions comparison;
  auto* benchmark = app.add_subcommand("benchmark", "Short vs adaptive memory error/runtime sweep");
  add_simulation_flags(benchmark, bench_opts);
  benchmark->add_option("--gammas", bench_gammas, "Gamma values")->delimiter(',')->capture_default_str();
  benchmark->add_option("--short-lengths", lengths, "Short memory lengths L")->delimiter(',');
  benchmark->add_option("--adaptive-bases", bases, "Adaptive base intervals a")->delimiter(',');
  benchmark->add_option("--repeats", comparison.repeats, "Timed runs per cell (fastest kept)");
  benchmark->add_flag("--parallel", comparison.parallel,
                      "Run cells concurrently (FRACGRID_THREADS caps workers)");

  CommonOptions sweep_opts;
  std::vector<double> sweep_gammas{0.5, 0.75, 0.9, 1.0};
  auto* sweep = app.add_subcommand("sweep-gamma", "Profiles and source traces across gamma");
  add_simulation_flags(sweep, sweep_opts);
  sweep->add_option("--gammas", sweep_gammas, "Gamma values")->delimiter(',')->capture_default_str();

  std::uint64_t sched_k = 0;
  std::string sched_memory = "full";
  double sched_dt = 1.0;
  std::string sched_out;
  auto* schedule = app.add_subcommand("schedule", "Print a memory schedule (m,w) and its coverage");
  schedule->add_option("--k", sched_k, "Current step")->required();
  schedule->add_option("--memory", sched_memory, "full | short:L | adaptive:a")->capture_default_str();
  schedule->add_option("--dt", sched_dt, "Time step (short memory only)")->capture_default_str();
  schedule->add_option("--out", sched_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  comparison.workers = worker_count_from_env();
  try {
    if (*simulate) return cmd_simulate(sim_opts, write_snapshots, log_every);
    if (*benchmark) {
      if (bench_gammas.empty()) throw ConfigError("--gammas needs at least one value", "gammas");
      return cmd_benchmark(bench_opts, bench_gammas, lengths, bases, comparison);
    }
    if (*sweep) {
      if (sweep_gammas.empty()) throw ConfigError("--gammas needs at least one value", "gammas");
      return cmd_sweep_gamma(sweep_opts, sweep_gammas);
    }
    if (*schedule) return cmd_schedule(sched_k, sched_memory, sched_dt, sched_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoFailure;
  }
  return kOk;
}
