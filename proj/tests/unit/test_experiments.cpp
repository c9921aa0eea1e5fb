#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "wedgehull/errors.hpp"
#include "wedgehull/experiments.hpp"
#include "wedgehull/hull.hpp"
#include "wedgehull/records_io.hpp"

using namespace wedge;

namespace {

std::vector<RunRecord> synthetic(const std::vector<double>& grid, const std::function<double(double, int)>& facets,
                                 int reps) {
  std::vector<RunRecord> out;
  for (double n : grid)
    for (int r = 0; r < reps; ++r) {
      RunRecord rec;
      rec.d = 2;
      rec.j = 2;
      rec.size_param = n;
      rec.rep = r;
      rec.facets = static_cast<std::size_t>(facets(n, r));
      out.push_back(rec);
    }
  return out;
}

ExperimentConfig small_config(ModelKind model, int d, std::vector<double> grid, int reps) {
  ExperimentConfig c;
  c.model = model;
  c.d = d;
  c.grid = std::move(grid);
  c.reps = reps;
  c.master_seed = 11;
  return c;
}

}  // namespace

TEST_CASE("slope fits on synthetic records") {
  const std::vector<double> grid = {std::exp(4.0), std::exp(6.0), std::exp(8.0), std::exp(10.0)};
  // Noise-free: 3 log n + 5 at every replication, so every variance is 0.
  const auto exact = synthetic(grid, [](double n, int) { return std::round(3 * std::log(n) + 5); }, 5);
  const SlopeFit f = fit_slope(exact, {});
  CHECK_FALSE(f.weighted);
  CHECK(f.slope == doctest::Approx(3.0));
  CHECK(f.intercept == doctest::Approx(5.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.slope_std_error == doctest::Approx(0.0));

  const auto flat = synthetic(grid, [](double, int) { return 7.0; }, 5);
  const SlopeFit g = fit_slope(flat, {});
  CHECK(g.slope == 0.0);
  CHECK(g.r_squared == 1.0);

  // Alternating ±1 noise with equal variance: WLS reduces to OLS.
  const auto noisy = synthetic(grid, [](double n, int r) { return std::round(2 * std::log(n)) + 10 + (r % 2 ? 1 : -1); }, 4);
  const SlopeFit h = fit_slope(noisy, {});
  CHECK(h.weighted);
  CHECK(h.slope == doctest::Approx(2.0));
  // Var = 4/3 per point, 4 reps: se = sqrt(var/reps / Σ(x - x̄)²) with Σ = 20.
  CHECK(h.slope_std_error == doctest::Approx(std::sqrt((4.0 / 3.0) / 4.0 / 20.0)));

  CHECK_THROWS_AS(fit_slope(exact, {grid[0], grid[1]}), FitError);
  const SlopeFit sq = fit_slope(exact, {}, 2);
  CHECK(sq.log_power == 2);
  CHECK(sq.grid_points_used.size() == 4);
}

TEST_CASE("hull sizes for tiny clouds") {
  for (ModelKind m : {ModelKind::binomial, ModelKind::halfsphere}) {
    const auto recs = run_experiment(small_config(m, 2, {3}, 20));
    for (const auto& r : recs) CHECK(r.facets == 3);
  }
  ExperimentConfig poly = small_config(ModelKind::polygon_baseline, 2, {3}, 20);
  poly.ell = 4;
  for (const auto& r : run_experiment(poly)) {
    CHECK(r.facets == 3);
    CHECK(r.j == 4);
  }
  const auto zero = run_experiment(small_config(ModelKind::poisson, 2, {0.0, 1.0}, 10));
  for (const auto& r : zero)
    if (r.size_param == 0.0) CHECK(r.facets == 0);
}

TEST_CASE("the probe reproduces the half-sphere and the right-angled wedge") {
  for (int j : {1, 2}) {
    ExperimentConfig probe = small_config(ModelKind::conjecture_probe, 3, {16, 64, 256}, 25);
    probe.j = j;
    const ModelKind other = j == 1 ? ModelKind::halfsphere : ModelKind::binomial;
    const auto a = run_experiment(probe);
    const auto b = run_experiment(small_config(other, 3, {16, 64, 256}, 25));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].facets == b[i].facets);
      CHECK(a[i].vertices == b[i].vertices);
      CHECK(a[i].stream_id == b[i].stream_id);
    }
  }
}

TEST_CASE("records do not depend on the worker count") {
  ExperimentConfig c = small_config(ModelKind::binomial, 2, {64, 512, 4096}, 30);
  const auto one = run_experiment(c);
  c.workers = 4;
  const auto four = run_experiment(c);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_outcome(one[i], four[i]));
}

TEST_CASE("projected hull agrees with the exhaustive test inside a sweep") {
  // Redraw each replication of a tiny d = 3 sweep and count facets both ways.
  const ExperimentConfig c = small_config(ModelKind::binomial, 3, {12, 24}, 10);
  const auto recs = run_experiment(c);
  for (const auto& r : recs) {
    const SampleCloud cloud = sample_uniform_wedge(WedgeModel::right_angle(3), SeedSpec{c.master_seed, r.stream_id},
                                                   static_cast<std::size_t>(r.size_param));
    CHECK(facets_ambient(cloud).facet_count() == r.facets);
  }
}

TEST_CASE("CSV and JSON round trips") {
  ExperimentConfig c = small_config(ModelKind::poisson, 2, {10.0, 20.5, 41.0}, 3);
  const auto recs = run_experiment(c);
  std::stringstream ss;
  write_records_csv(ss, recs);
  const std::string first_line = ss.str().substr(0, ss.str().find('\n'));
  CHECK(first_line == kCsvHeader);
  const auto back = read_records_csv(ss);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(same_outcome(back[i], recs[i]));

  std::stringstream bad("model,d\nbinomial,2\n");
  CHECK_THROWS_AS(read_records_csv(bad), DomainError);

  c.fit_window = {20.5, 41.0};
  c.normals = {};
  const nlohmann::json j = config_to_json(c);
  const ExperimentConfig r = config_from_json(j);
  CHECK(r.grid == c.grid);
  CHECK(r.fit_window == c.fit_window);
  CHECK(r.model == c.model);
  CHECK(config_hash(r) == config_hash(c));
  CHECK(j.at("config_hash").get<std::uint64_t>() == config_hash(c));

  nlohmann::json k = {{"model", "binomial"}, {"d", 2}, {"grid", "8:64:x2"}, {"reps", 5}};
  CHECK(config_from_json(k).grid == std::vector<double>{8, 16, 32, 64});
}

TEST_CASE("grid strings") {
  CHECK(parse_grid("512:131072:x2").size() == 9);
  CHECK(parse_grid("10:40:+10") == std::vector<double>{10, 20, 30, 40});
  CHECK(parse_grid("3, 5,9") == std::vector<double>{3, 5, 9});
  CHECK_THROWS_AS(parse_grid("1:10:x1"), DomainError);
  CHECK_THROWS_AS(parse_grid("a,b"), DomainError);
  CHECK_THROWS_AS(parse_grid(""), DomainError);
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(validate(small_config(ModelKind::binomial, 1, {8}, 2)), DomainError);
  CHECK_THROWS_AS(validate(small_config(ModelKind::binomial, 2, {8, 4}, 2)), DomainError);
  CHECK_THROWS_AS(validate(small_config(ModelKind::binomial, 2, {2.5}, 2)), DomainError);
  CHECK_THROWS_AS(validate(small_config(ModelKind::polygon_baseline, 3, {8}, 2)), DomainError);
  ExperimentConfig p = small_config(ModelKind::conjecture_probe, 3, {8}, 2);
  p.j = 4;
  CHECK_THROWS_AS(validate(p), DomainError);
  ExperimentConfig w = small_config(ModelKind::binomial, 2, {8, 16}, 2);
  w.fit_window = {32};
  CHECK_THROWS_AS(validate(w), DomainError);
  CHECK_THROWS_AS(parse_model("triangle"), DomainError);
  CHECK(parse_model("conjecture_probe") == ModelKind::conjecture_probe);

  const ExperimentConfig win = small_config(ModelKind::binomial, 2, {128, 256, 512, 1024}, 2);
  CHECK(effective_fit_window(win) == std::vector<double>{512, 1024});
}

TEST_CASE("three hyperplanes in dimension three") {
  ExperimentConfig c = small_config(ModelKind::conjecture_probe, 3, {128, 512, 2048, 8192}, 40);
  c.j = 3;
  c.workers = 4;
  const auto recs = run_experiment(c);
  const SlopeFit lin = fit_slope(recs, {});
  const SlopeFit sq = fit_slope(recs, {}, 2);
  MESSAGE("j = 3: slope on log n ", lin.slope, " (r2 ", lin.r_squared, "), on log^2 n ", sq.slope, " (r2 ",
          sq.r_squared, ")");
  CHECK(sq.slope > 0.0);
}
