#include <doctest.h>

#include <cmath>

#include "fracgrid/benchmark.hpp"
#include "fracgrid/errors.hpp"

using namespace fracgrid;

namespace {

double error_for(const std::vector<BenchmarkRecord>& records, const std::string& strategy, double param,
                 double gamma) {
  for (const auto& r : records) {
    if (r.strategy == strategy && r.param == param && r.gamma == gamma) return r.err_l2_pct;
  }
  FAIL("record not found: " << strategy << " " << param << " " << gamma);
  return NAN;
}

SimulationConfig short_comparison(double gamma, std::size_t steps) {
  SimulationConfig c = comparison_preset(gamma);
  c.n_steps = steps;
  return c;
}

}  // namespace

TEST_CASE("relative_error examples") {
  Grid2D ref(4, 3);
  ref(1, 1) = 2.0;
  ref(2, 1) = -3.0;
  const auto same = relative_error(ref, ref);
  CHECK(same.l2_pct == 0.0);
  CHECK(same.linf_pct == 0.0);

  Grid2D scaled = ref;
  for (double& v : scaled.data()) v *= 1.01;
  const auto err = relative_error(scaled, ref);
  CHECK(err.l2_pct == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(err.linf_pct == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(relative_error(ref, Grid2D(4, 3)), ConfigError);
  CHECK_THROWS_AS(relative_error(ref, Grid2D(3, 4)), ConfigError);
}

TEST_CASE("presets carry the benchmark parameters") {
  const auto p = profile_preset(0.75);
  CHECK(p.nx == 100);
  CHECK(p.ny == 100);
  CHECK(p.dt == 0.5);
  CHECK(p.dx == 5.0);
  CHECK(static_cast<double>(p.n_steps) * p.dt == 100.0);
  CHECK(p.sources.size() == 5);
  CHECK(focus_cell(p) == std::pair<std::size_t, std::size_t>{50, 50});

  const auto c = comparison_preset(0.5);
  CHECK(c.nx == 20);
  CHECK(c.dt == 1.0);
  CHECK(c.dx == 10.0);
  CHECK(c.n_steps == 1500);
  CHECK(c.sources == std::vector<PointSource>{{10, 10, 10.0}});
}

TEST_CASE("run_comparison layout and ordering") {
  const auto base = short_comparison(0.5, 60);
  const std::vector<double> gammas{0.9, 0.5};
  const std::vector<double> lengths{5, 60, 20};
  const std::vector<std::uint64_t> bases{3, 8};
  const auto records = run_comparison(base, gammas, lengths, bases);
  REQUIRE(records.size() == gammas.size() * (lengths.size() + bases.size() + 1));
  for (std::size_t i = 1; i < records.size(); ++i) CHECK_FALSE(record_less(records[i], records[i - 1]));
  CHECK(records.front().gamma == 0.5);
  CHECK(records.front().strategy == "adaptive");
  for (const auto& r : records) {
    CHECK_FALSE(r.failed);
    CHECK(r.err_l2_pct >= 0.0);
    CHECK(r.elapsed_s >= 0.0);
    if (r.strategy == "full") CHECK(r.err_l2_pct == 0.0);
  }
  CHECK(error_for(records, "short", 60, 0.5) == 0.0);
  CHECK(error_for(records, "short", 5, 0.5) > error_for(records, "short", 20, 0.5));
}

TEST_CASE("run_comparison is order-independent of parallel execution") {
  const auto base = short_comparison(0.7, 40);
  const auto serial = run_comparison(base, {0.7}, {4, 10}, {3, 5});
  const auto parallel = run_comparison(base, {0.7}, {4, 10}, {3, 5}, {.parallel = true, .workers = 3});
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].strategy == parallel[i].strategy);
    CHECK(serial[i].param == parallel[i].param);
    CHECK(serial[i].err_l2_pct == parallel[i].err_l2_pct);
    CHECK(serial[i].err_linf_pct == parallel[i].err_linf_pct);
  }
}

TEST_CASE("a bad cell becomes a failed record instead of aborting the sweep") {
  const auto records = run_comparison(short_comparison(0.5, 20), {0.5}, {-1.0, 5.0}, {1, 3});
  REQUIRE(records.size() == 5);
  int failed = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
      CHECK(std::isnan(r.err_l2_pct));
      CHECK_FALSE(r.failure.empty());
    }
  }
  CHECK(failed == 2);
}

TEST_CASE("gamma = 1 sweep is error-free") {
  const auto records = run_comparison(short_comparison(1.0, 150), {1.0}, {10, 50}, {3, 5});
  for (const auto& r : records) CHECK(r.err_l2_pct <= 1e-10);
}

TEST_CASE("comparison preset: truncation error trends at gamma = 0.5") {
  const auto base = comparison_preset(0.5);
  const auto records =
      run_comparison(base, {0.5}, {10, 50, 250, 750, 1500}, {3, 20, 1500});
  // Short memory: exact at L = T, error grows as L shrinks.
  CHECK(error_for(records, "short", 1500, 0.5) == 0.0);
  double previous = 0.0;
  for (double L : {750.0, 250.0, 50.0, 10.0}) {
    const double e = error_for(records, "short", L, 0.5);
    CHECK(e > previous);
    previous = e;
  }
  // Adaptive memory: exact once the base interval spans the run, and far
  // better than short memory at small parameters.
  CHECK(error_for(records, "adaptive", 1500, 0.5) == 0.0);
  CHECK(error_for(records, "adaptive", 20, 0.5) < error_for(records, "adaptive", 3, 0.5));
  CHECK(error_for(records, "adaptive", 3, 0.5) < error_for(records, "short", 250, 0.5));
}

TEST_CASE("reference runs are bit-identical across executions") {
  const auto c = short_comparison(0.75, 300);
  CHECK(run(c).final_grid == run(c).final_grid);
}

TEST_CASE("gamma_sweep traces") {
  SimulationConfig base = profile_preset(0.5);
  base.nx = base.ny = 41;
  base.sources = {{20, 20, 0.1}, {21, 20, 0.05}, {20, 21, 0.05}, {19, 20, 0.05}, {20, 19, 0.05}};
  base.n_steps = 40;
  base.strategy = AdaptiveMemory{3};  // forced back to full memory
  const auto traces = gamma_sweep(base, {0.5, 1.0});
  REQUIRE(traces.size() == 2);
  for (const auto& t : traces) {
    CHECK(t.profile.size() == 41);
    CHECK(t.times.front() == 0.0);
    CHECK(t.focus_values.front() == 0.1);
    CHECK(t.times.back() == 20.0);
    CHECK(t.focus_values.back() == t.final_grid(20, 20));
    for (std::size_t d = 1; d < 20; ++d) CHECK(std::abs(t.profile[20 - d] - t.profile[20 + d]) <= 1e-12);
  }
  CHECK(traces[0].focus_values.back() > traces[1].focus_values.back());

  SimulationConfig full = base;
  full.gamma = 0.5;
  full.strategy = FullMemory{};
  CHECK(traces[0].final_grid == run(full).final_grid);
}

TEST_CASE("worker count honours FRACGRID_THREADS") {
  setenv("FRACGRID_THREADS", "3", 1);
  CHECK(worker_count_from_env() == 3);
  setenv("FRACGRID_THREADS", "0", 1);
  CHECK(worker_count_from_env() >= 1);
  unsetenv("FRACGRID_THREADS");
  CHECK(worker_count_from_env() >= 1);
}
