#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wedgehull/geometry.hpp"
#include "wedgehull/rng.hpp"

namespace wedge {

enum class ModelKind { binomial, poisson, halfsphere, polygon_baseline, conjecture_probe };

std::string to_string(ModelKind m);
// Accepts the names printed by to_string plus "polygon_baseline" and
// "conjecture_probe". Throws DomainError otherwise.
ModelKind parse_model(const std::string& name);

struct ExperimentConfig {
  ModelKind model = ModelKind::binomial;
  int d = 2;
  // Number of bounding hyperplanes; ignored by polygon_baseline.
  int j = 2;
  // Polygon corners for polygon_baseline.
  int ell = 3;
  // n values (binomial, halfsphere, polygon, probe) or γ values (poisson).
  std::vector<double> grid;
  int reps = 400;
  std::uint64_t master_seed = 0;
  // Grid values used by the regression; empty selects the default window.
  std::vector<double> fit_window;
  std::string output_path;
  // Optional explicit normals for conjecture_probe; orthant axes otherwise.
  std::vector<std::vector<double>> normals;
  int workers = 1;
  // Sample budget for the A_d estimate reported next to the fit (d >= 3).
  std::size_t constants_samples = 1'000'000;
};

// Throws DomainError on inconsistent configurations.
void validate(const ExperimentConfig& cfg);
// Stable 64-bit digest of the fields that determine the records.
std::uint64_t config_hash(const ExperimentConfig& cfg);
WedgeModel model_for(const ExperimentConfig& cfg);
// Grid values with at least 512 expected points, or cfg.fit_window if set.
std::vector<double> effective_fit_window(const ExperimentConfig& cfg);

struct RunRecord {
  ModelKind model = ModelKind::binomial;
  int d = 0;
  int j = 0;
  double size_param = 0.0;
  int rep = 0;
  std::size_t facets = 0;
  std::size_t vertices = 0;
  std::uint64_t stream_id = 0;
  double wall_ms = 0.0;
  // "ok", "redrawn" (after a degenerate draw), "ambiguous" (ambient facet
  // test excluded subsets) or "degenerate" (all retries failed; not
  // aggregated).
  std::string flag = "ok";
};

// Equality of everything except wall_ms.
bool same_outcome(const RunRecord& a, const RunRecord& b);

// Stream of replication `rep` at `size_param`. Does not depend on the model,
// so models that sample the same law reproduce each other's records.
std::uint64_t replication_stream(double size_param, int rep);

std::vector<RunRecord> run_binomial(const ExperimentConfig& cfg);
std::vector<RunRecord> run_poisson(const ExperimentConfig& cfg);
std::vector<RunRecord> run_halfsphere(const ExperimentConfig& cfg);
std::vector<RunRecord> run_polygon_baseline(const ExperimentConfig& cfg, int ell);
std::vector<RunRecord> run_conjecture_probe(const ExperimentConfig& cfg);
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

struct GridSummary {
  std::vector<double> grid;
  std::vector<double> means;
  std::vector<double> variances;   // per-replication sample variance
  std::vector<double> std_errors;  // of the mean
  std::vector<std::size_t> counts;
};

// Per grid value, in increasing order. Records flagged "degenerate" are left out.
GridSummary summarize(const std::vector<RunRecord>& records);

struct SlopeFit {
  double slope = 0.0;
  double slope_std_error = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> grid_points_used;
  // False when some window point had zero variance or a single replication
  // and the fit fell back to ordinary least squares.
  bool weighted = true;
  int log_power = 1;
};

// Regression of the per-point mean facet count on (log size_param)^log_power
// over the window (all grid values if empty). Weighted by reps/variance;
// the slope error is the WLS standard error. Throws FitError for fewer than
// three window points.
SlopeFit fit_slope(const std::vector<RunRecord>& records, const std::vector<double>& window, int log_power = 1);
SlopeFit fit_summary(const GridSummary& summary, const std::vector<double>& window, int log_power = 1);

struct BootstrapResult {
  double slope_mean = 0.0;
  double slope_sd = 0.0;
  double ci_low = 0.0;   // 2.5% quantile
  double ci_high = 0.0;  // 97.5% quantile
  std::size_t resamples = 0;
};

// Resamples replications within each grid point and refits.
BootstrapResult bootstrap_slope(const std::vector<RunRecord>& records, const std::vector<double>& window,
                                std::size_t resamples, SeedSpec seed);

}  // namespace wedge
