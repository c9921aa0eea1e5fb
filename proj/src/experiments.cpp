#include "wedgehull/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "wedgehull/errors.hpp"
#include "wedgehull/hull.hpp"
#include "wedgehull/parallel.hpp"
#include "wedgehull/sampling.hpp"

namespace wedge {

namespace {

constexpr int kMaxRetries = 3;
constexpr double kDefaultWindowPoints = 512.0;

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

bool is_count(double x) { return x >= 0.0 && std::floor(x) == x && x < 9.0e15; }

void require_model(const ExperimentConfig& cfg, ModelKind expected, const char* name) {
  if (cfg.model != expected) throw DomainError(std::string(name) + ": config model is " + to_string(cfg.model));
  validate(cfg);
}

struct Outcome {
  std::size_t facets = 0;
  std::size_t vertices = 0;
  bool ambiguous = false;
};

// Runs one replication on stream (master_seed, stream), redrawing on a child
// stream after a degenerate configuration.
template <class Draw>
RunRecord replicate(const ExperimentConfig& cfg, int record_j, double size_param, int rep, Draw&& draw) {
  RunRecord rec;
  rec.model = cfg.model;
  rec.d = cfg.d;
  rec.j = record_j;
  rec.size_param = size_param;
  rec.rep = rep;
  const SeedSpec base{cfg.master_seed, replication_stream(size_param, rep)};
  const auto t0 = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    const SeedSpec seed = attempt == 0 ? base : base.child(static_cast<std::uint64_t>(attempt));
    rec.stream_id = seed.stream_id;
    try {
      const Outcome out = draw(seed);
      rec.facets = out.facets;
      rec.vertices = out.vertices;
      rec.flag = out.ambiguous ? "ambiguous" : (attempt == 0 ? "ok" : "redrawn");
      break;
    } catch (const DegenerateInput&) {
      rec.flag = "degenerate";
      rec.facets = 0;
      rec.vertices = 0;
    }
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

template <class Draw>
std::vector<RunRecord> sweep(const ExperimentConfig& cfg, int record_j, Draw&& draw) {
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  std::vector<RunRecord> records(cfg.grid.size() * reps);
  parallel_for(records.size(), cfg.workers, [&](std::size_t task) {
    const double size = cfg.grid[task / reps];
    const int rep = static_cast<int>(task % reps);
    records[task] = replicate(cfg, record_j, size, rep, [&](SeedSpec seed) { return draw(size, seed); });
  });
  return records;
}

Outcome hull_outcome(const SampleCloud& cloud) {
  const FacetSet f = count_facets(cloud);
  return {f.facet_count(), f.vertex_count, f.degenerate_flag};
}

std::vector<RunRecord> run_wedge_binomial(const ExperimentConfig& cfg, const WedgeModel& m) {
  return sweep(cfg, m.j(), [&](double n, SeedSpec seed) {
    return hull_outcome(sample_uniform_wedge(m, seed, static_cast<std::size_t>(n)));
  });
}

}  // namespace

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::binomial: return "binomial";
    case ModelKind::poisson: return "poisson";
    case ModelKind::halfsphere: return "halfsphere";
    case ModelKind::polygon_baseline: return "polygon";
    case ModelKind::conjecture_probe: return "conjecture";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& name) {
  if (name == "binomial") return ModelKind::binomial;
  if (name == "poisson") return ModelKind::poisson;
  if (name == "halfsphere") return ModelKind::halfsphere;
  if (name == "polygon" || name == "polygon_baseline") return ModelKind::polygon_baseline;
  if (name == "conjecture" || name == "conjecture_probe") return ModelKind::conjecture_probe;
  throw DomainError("unknown model '" + name + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.d < 2) throw DomainError("config: d must be >= 2");
  if (cfg.reps < 1) throw DomainError("config: reps must be >= 1");
  if (cfg.grid.empty()) throw DomainError("config: empty grid");
  for (std::size_t i = 1; i < cfg.grid.size(); ++i)
    if (!(cfg.grid[i] > cfg.grid[i - 1])) throw DomainError("config: grid must be strictly increasing");
  for (double w : cfg.fit_window)
    if (std::find(cfg.grid.begin(), cfg.grid.end(), w) == cfg.grid.end())
      throw DomainError("config: fit window value " + std::to_string(w) + " is not on the grid");
  if (cfg.model == ModelKind::poisson) {
    if (!(cfg.grid.front() >= 0.0)) throw DomainError("config: intensities must be >= 0");
  } else {
    for (double n : cfg.grid)
      if (!is_count(n) || n < cfg.d + 1) throw DomainError("config: n values must be integers >= d+1");
  }
  if (cfg.model == ModelKind::polygon_baseline) {
    if (cfg.d != 2) throw DomainError("config: polygon baseline is planar (d = 2)");
    if (cfg.ell < 3) throw DomainError("config: ell must be >= 3");
  }
  if (cfg.model == ModelKind::conjecture_probe) {
    if (cfg.j < 1 || cfg.j > cfg.d) throw DomainError("config: probe needs 1 <= j <= d");
    if (!cfg.normals.empty() && static_cast<int>(cfg.normals.size()) != cfg.j)
      throw DomainError("config: number of normals must equal j");
  }
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(cfg.model));
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.d));
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.model == ModelKind::polygon_baseline ? cfg.ell : cfg.j));
  h = hash_combine(h, static_cast<std::uint64_t>(cfg.reps));
  h = hash_combine(h, cfg.master_seed);
  for (double g : cfg.grid) h = hash_combine(h, bits(g));
  for (const auto& n : cfg.normals)
    for (double x : n) h = hash_combine(h, bits(x));
  return h;
}

WedgeModel model_for(const ExperimentConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::binomial:
    case ModelKind::poisson:
      return WedgeModel::right_angle(cfg.d);
    case ModelKind::halfsphere:
      return WedgeModel::half_sphere(cfg.d);
    case ModelKind::conjecture_probe: {
      if (cfg.normals.empty()) return WedgeModel::orthant(cfg.d, cfg.j);
      std::vector<AmbientVector> normals;
      for (const auto& n : cfg.normals) normals.emplace_back(n);
      return WedgeModel::with_normals(cfg.d, std::move(normals));
    }
    case ModelKind::polygon_baseline:
      break;
  }
  throw DomainError("model_for: the polygon baseline has no wedge");
}

std::vector<double> effective_fit_window(const ExperimentConfig& cfg) {
  if (!cfg.fit_window.empty()) return cfg.fit_window;
  const double scale = cfg.model == ModelKind::poisson ? wedge_measure(model_for(cfg)) : 1.0;
  std::vector<double> out;
  for (double g : cfg.grid)
    if (g * scale >= kDefaultWindowPoints) out.push_back(g);
  return out;
}

bool same_outcome(const RunRecord& a, const RunRecord& b) {
  return a.model == b.model && a.d == b.d && a.j == b.j && bits(a.size_param) == bits(b.size_param) &&
         a.rep == b.rep && a.facets == b.facets && a.vertices == b.vertices && a.stream_id == b.stream_id &&
         a.flag == b.flag;
}

std::uint64_t replication_stream(double size_param, int rep) {
  return hash_combine(splitmix64(bits(size_param)), static_cast<std::uint64_t>(rep));
}

std::vector<RunRecord> run_binomial(const ExperimentConfig& cfg) {
  require_model(cfg, ModelKind::binomial, "run_binomial");
  return run_wedge_binomial(cfg, WedgeModel::right_angle(cfg.d));
}

std::vector<RunRecord> run_halfsphere(const ExperimentConfig& cfg) {
  require_model(cfg, ModelKind::halfsphere, "run_halfsphere");
  return run_wedge_binomial(cfg, WedgeModel::half_sphere(cfg.d));
}

std::vector<RunRecord> run_conjecture_probe(const ExperimentConfig& cfg) {
  require_model(cfg, ModelKind::conjecture_probe, "run_conjecture_probe");
  return run_wedge_binomial(cfg, model_for(cfg));
}

std::vector<RunRecord> run_poisson(const ExperimentConfig& cfg) {
  require_model(cfg, ModelKind::poisson, "run_poisson");
  const WedgeModel m = WedgeModel::right_angle(cfg.d);
  return sweep(cfg, 2, [&](double gamma, SeedSpec seed) { return hull_outcome(sample_poisson_wedge(m, gamma, seed)); });
}

std::vector<RunRecord> run_polygon_baseline(const ExperimentConfig& cfg, int ell) {
  require_model(cfg, ModelKind::polygon_baseline, "run_polygon_baseline");
  if (ell < 3) throw DomainError("run_polygon_baseline: ell must be >= 3");
  std::vector<double> corners(2 * static_cast<std::size_t>(ell) + 2);
  for (int k = 0; k <= ell; ++k) {
    const double a = 2.0 * std::numbers::pi * (k % ell) / ell;
    corners[2 * static_cast<std::size_t>(k)] = std::cos(a);
    corners[2 * static_cast<std::size_t>(k) + 1] = std::sin(a);
  }
  return sweep(cfg, ell, [&](double n, SeedSpec seed) {
    Rng rng(seed);
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> xy(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
      // Fan triangle (0, v_k, v_{k+1}), then a uniform point inside it.
      const auto k = std::min(static_cast<std::size_t>(rng.uniform() * ell), static_cast<std::size_t>(ell - 1));
      double u = rng.uniform(), v = rng.uniform();
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      xy[2 * i] = u * corners[2 * k] + v * corners[2 * k + 2];
      xy[2 * i + 1] = u * corners[2 * k + 1] + v * corners[2 * k + 3];
    }
    const std::size_t h = convex_hull_2d(xy).size();
    return Outcome{h, h, false};
  });
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::binomial: return run_binomial(cfg);
    case ModelKind::poisson: return run_poisson(cfg);
    case ModelKind::halfsphere: return run_halfsphere(cfg);
    case ModelKind::polygon_baseline: return run_polygon_baseline(cfg, cfg.ell);
    case ModelKind::conjecture_probe: return run_conjecture_probe(cfg);
  }
  throw DomainError("run_experiment: unknown model");
}

GridSummary summarize(const std::vector<RunRecord>& records) {
  std::map<double, Moments> by_size;
  for (const auto& r : records)
    if (r.flag != "degenerate") by_size[r.size_param].add(static_cast<double>(r.facets));
  GridSummary s;
  for (const auto& [size, m] : by_size) {
    s.grid.push_back(size);
    s.means.push_back(m.mean);
    s.variances.push_back(m.variance());
    s.std_errors.push_back(m.std_error());
    s.counts.push_back(m.n);
  }
  return s;
}

SlopeFit fit_summary(const GridSummary& summary, const std::vector<double>& window, int log_power) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < summary.grid.size(); ++i)
    if (window.empty() || std::find(window.begin(), window.end(), summary.grid[i]) != window.end()) idx.push_back(i);
  if (idx.size() < 3) throw FitError("fit_slope: need at least 3 grid points in the window, got " + std::to_string(idx.size()));

  SlopeFit fit;
  fit.log_power = log_power;
  for (std::size_t i : idx) {
    fit.grid_points_used.push_back(summary.grid[i]);
    if (summary.counts[i] < 2 || !(summary.variances[i] > 0.0)) fit.weighted = false;
  }
  const std::size_t m = idx.size();
  std::vector<double> x(m), y(m), w(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = idx[k];
    x[k] = std::pow(std::log(summary.grid[i]), log_power);
    y[k] = summary.means[i];
    w[k] = fit.weighted ? static_cast<double>(summary.counts[i]) / summary.variances[i] : 1.0;
  }
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sw += w[k];
    sx += w[k] * x[k];
    sy += w[k] * y[k];
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += w[k] * (x[k] - xbar) * (x[k] - xbar);
    sxy += w[k] * (x[k] - xbar) * (y[k] - ybar);
    syy += w[k] * (y[k] - ybar) * (y[k] - ybar);
  }
  if (!(sxx > 0.0)) throw FitError("fit_slope: window has no spread in log size");
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ssr = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = y[k] - (fit.intercept + fit.slope * x[k]);
    ssr += w[k] * r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  fit.slope_std_error = fit.weighted ? std::sqrt(1.0 / sxx) : std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  return fit;
}

SlopeFit fit_slope(const std::vector<RunRecord>& records, const std::vector<double>& window, int log_power) {
  return fit_summary(summarize(records), window, log_power);
}

BootstrapResult bootstrap_slope(const std::vector<RunRecord>& records, const std::vector<double>& window,
                                std::size_t resamples, SeedSpec seed) {
  std::map<double, std::vector<double>> by_size;
  for (const auto& r : records)
    if (r.flag != "degenerate") by_size[r.size_param].push_back(static_cast<double>(r.facets));
  std::vector<double> slopes;
  slopes.reserve(resamples);
  for (std::size_t b = 0; b < resamples; ++b) {
    Rng rng(seed.child(b));
    GridSummary s;
    for (const auto& [size, values] : by_size) {
      Moments m;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto pick = std::min(static_cast<std::size_t>(rng.uniform() * static_cast<double>(values.size())),
                                   values.size() - 1);
        m.add(values[pick]);
      }
      s.grid.push_back(size);
      s.means.push_back(m.mean);
      s.variances.push_back(m.variance());
      s.std_errors.push_back(m.std_error());
      s.counts.push_back(m.n);
    }
    slopes.push_back(fit_summary(s, window).slope);
  }
  BootstrapResult out;
  out.resamples = resamples;
  Moments m;
  for (double v : slopes) m.add(v);
  out.slope_mean = m.mean;
  out.slope_sd = std::sqrt(m.variance());
  std::sort(slopes.begin(), slopes.end());
  if (!slopes.empty()) {
    auto q = [&](double p) { return slopes[static_cast<std::size_t>(p * static_cast<double>(slopes.size() - 1))]; };
    out.ci_low = q(0.025);
    out.ci_high = q(0.975);
  }
  return out;
}

}  // namespace wedge
