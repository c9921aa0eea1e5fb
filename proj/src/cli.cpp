#include "wedgehull/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "wedgehull/errors.hpp"
#include "wedgehull/experiments.hpp"
#include "wedgehull/formulas.hpp"
#include "wedgehull/records_io.hpp"
#include "wedgehull/verify.hpp"

namespace wedge {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("WEDGEHULL_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

std::string file_stem(const ExperimentConfig& cfg) {
  std::string stem = to_string(cfg.model) + "_d" + std::to_string(cfg.d);
  if (cfg.model == ModelKind::polygon_baseline) stem += "_ell" + std::to_string(cfg.ell);
  if (cfg.model == ModelKind::conjecture_probe) stem += "_j" + std::to_string(cfg.j);
  return stem + "_seed" + std::to_string(cfg.master_seed);
}

std::optional<ModelConstants> constants_for(const ExperimentConfig& cfg) {
  const bool wedge2 = cfg.model == ModelKind::binomial || cfg.model == ModelKind::poisson ||
                      (cfg.model == ModelKind::conjecture_probe && cfg.j == 2 && cfg.normals.empty());
  if (!wedge2) return std::nullopt;
  if (cfg.d == 2) return model_constants(2, kA2);
  const EstimatorReport a = estimate_A_d(cfg.d, cfg.constants_samples, SeedSpec{cfg.master_seed, 0}, cfg.workers);
  return model_constants(cfg.d, a.value, a.std_error);
}

int cmd_simulate(ExperimentConfig cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const std::vector<RunRecord> records = run_experiment(cfg);

  ExperimentSummary s;
  s.config = cfg;
  s.summary = summarize(records);
  const std::vector<double> window = effective_fit_window(cfg);
  try {
    s.fit = fit_slope(records, window);
    if (cfg.model == ModelKind::conjecture_probe && cfg.j >= 3) s.fit_power = fit_slope(records, window, cfg.j - 1);
  } catch (const FitError& e) {
    err << "warning: " << e.what() << '\n';
  }
  s.constants = constants_for(cfg);
  switch (cfg.model) {
    case ModelKind::binomial:
    case ModelKind::poisson:
      s.theory_slope = s.constants->c_d2;
      break;
    case ModelKind::halfsphere:
      s.theory_slope = 0.0;
      break;
    case ModelKind::polygon_baseline:
      s.theory_slope = 2.0 * cfg.ell / 3.0;
      break;
    case ModelKind::conjecture_probe:
      if (s.constants) s.theory_slope = s.constants->c_d2;
      break;
  }

  const std::filesystem::path dir = output_dir(cfg.output_path);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csv = dir / (file_stem(cfg) + ".csv");
  const std::filesystem::path json = dir / (file_stem(cfg) + ".json");
  {
    std::ofstream f(csv, std::ios::binary);
    write_records_csv(f, records);
    if (!f) throw Error("cannot write " + csv.string());
  }
  const nlohmann::json summary = summary_to_json(s);
  {
    std::ofstream f(json, std::ios::binary);
    f << summary.dump(2) << '\n';
    if (!f) throw Error("cannot write " + json.string());
  }
  out << summary.dump(2) << '\n';

  err << to_string(cfg.model) << " d=" << cfg.d << ": " << records.size() << " runs -> " << csv.string() << '\n';
  if (s.fit) {
    err << std::setprecision(5) << "fitted slope " << s.fit->slope << " +- " << s.fit->slope_std_error
        << " (r2 " << s.fit->r_squared << ", " << s.fit->grid_points_used.size() << " points)";
    if (s.theory_slope) err << ", theory " << *s.theory_slope;
    err << '\n';
  }
  return kExitOk;
}

int cmd_constants(int d, std::size_t samples, std::uint64_t seed, int workers, std::ostream& out, std::ostream& err) {
  if (d < 2) throw UsageError("--dim must be >= 2");
  if (samples < 1000) throw UsageError("--samples must be at least 1000");
  const EstimatorReport a = estimate_A_d(d, samples, SeedSpec{seed, 0}, workers);
  const ModelConstants c = model_constants(d, a.value, a.std_error);
  const double c_se = c.c_d2 / c.A_d * a.std_error;
  nlohmann::json j = {
      {"d", d},
      {"A_d", {{"value", a.value}, {"std_error", a.std_error}, {"sample_count", a.sample_count},
               {"seed", {{"master_seed", seed}, {"stream_id", a.seed.stream_id}}}}},
      {"constants", {{"omega_d_minus_1", c.omega_d_minus_1}, {"omega_d_plus_1", c.omega_d_plus_1},
                     {"b_d", c.b_d}, {"B_d", c.B_d}, {"c_d2", c.c_d2}, {"c_d2_se", c_se}}}};
  if (d == 2) j["exact"] = {{"A_d", kA2}, {"c_d2", model_constants(2, kA2).c_d2}};
  out << j.dump(2) << '\n';
  err << std::setprecision(6) << "A_" << d << " = " << a.value << " +- " << a.std_error << ", c_{" << d
      << ",2} = " << c.c_d2 << " +- " << c_se << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  const VerifyReport r = run_verify(opts);
  out << r.to_json().dump(2) << '\n';
  for (const auto& c : r.checks)
    err << (c.passed ? "pass " : "FAIL ") << c.suite << '/' << c.name << ": " << c.detail << '\n';
  return r.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random polytopes in a spherical wedge: simulation, constants and verification"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run a facet-count sweep and fit the log-slope");
  std::string config_path, model_name, grid_text, gamma_text, window_text, out_dir;
  int dim = 2, j = 2, ell = 3, reps = 400, workers = 1;
  std::uint64_t seed = 0;
  std::size_t constants_samples = 1'000'000;
  sim->add_option("--config", config_path, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  auto* o_model = sim->add_option("--model", model_name, "binomial|poisson|halfsphere|polygon|conjecture");
  auto* o_dim = sim->add_option("--dim", dim, "Sphere dimension d");
  auto* o_j = sim->add_option("--j", j, "Number of hyperplanes (conjecture probe)");
  auto* o_ell = sim->add_option("--ell", ell, "Polygon corners (polygon baseline)");
  auto* o_grid = sim->add_option("--grid", grid_text, "n values: start:stop:x2 or a comma list");
  auto* o_gamma = sim->add_option("--gamma-grid", gamma_text, "Intensities for the Poisson model");
  auto* o_reps = sim->add_option("--reps", reps, "Replications per grid value");
  auto* o_seed = sim->add_option("--seed", seed, "Master seed");
  auto* o_window = sim->add_option("--fit-window", window_text, "Grid values used by the fit");
  auto* o_out = sim->add_option("--out", out_dir, "Output directory (default $WEDGEHULL_OUT or .)");
  auto* o_workers = sim->add_option("--workers", workers, "Worker threads (0 = all cores)");
  auto* o_csamples = sim->add_option("--constants-samples", constants_samples, "A_d sample budget for d >= 3");

  auto* cons = app.add_subcommand("constants", "Estimate A_d and the derived constants");
  int c_dim = 2, c_workers = 1;
  std::size_t c_samples = 1'000'000;
  std::uint64_t c_seed = 0;
  cons->add_option("--dim", c_dim, "Sphere dimension d")->required();
  cons->add_option("--samples", c_samples, "Monte Carlo sample count (>= 1000)");
  cons->add_option("--seed", c_seed, "Master seed");
  cons->add_option("--workers", c_workers, "Worker threads (0 = all cores)");

  auto* ver = app.add_subcommand("verify", "Run property and oracle suites");
  VerifyOptions vopts;
  int v_dim = 0;
  ver->add_option("--suite", vopts.suite, "geometry|i2|i1|appendix|limits|hull|all")
      ->check(CLI::IsMember(verify_suites()));
  auto* o_vdim = ver->add_option("--dim", v_dim, "Restrict i1/i2 suites to one dimension");
  ver->add_option("--seed", vopts.seed, "Seed");
  ver->add_option("--workers", vopts.workers, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*sim) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        nlohmann::json jcfg;
        try {
          f >> jcfg;
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("cannot parse config: ") + e.what());
        }
        try {
          cfg = config_from_json(jcfg);
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
      }
      try {
        if (*o_model) cfg.model = parse_model(model_name);
        if (*o_dim) cfg.d = dim;
        if (*o_j) cfg.j = j;
        if (*o_ell) cfg.ell = ell;
        if (*o_grid && *o_gamma) throw UsageError("--grid and --gamma-grid are exclusive");
        if (*o_grid) cfg.grid = parse_grid(grid_text);
        if (*o_gamma) cfg.grid = parse_grid(gamma_text);
        if (*o_reps) cfg.reps = reps;
        if (*o_seed) cfg.master_seed = seed;
        if (*o_window) cfg.fit_window = parse_grid(window_text);
        if (*o_out) cfg.output_path = out_dir;
        if (*o_workers) cfg.workers = workers;
        if (*o_csamples) cfg.constants_samples = constants_samples;
        if (cfg.model == ModelKind::binomial || cfg.model == ModelKind::poisson) cfg.j = 2;
        if (cfg.model == ModelKind::halfsphere) cfg.j = 1;
        validate(cfg);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      return cmd_simulate(cfg, out, err);
    }
    if (*cons) return cmd_constants(c_dim, c_samples, c_seed, c_workers, out, err);
    if (*ver) {
      if (*o_vdim) {
        if (v_dim < 2) throw UsageError("--dim must be >= 2");
        vopts.dim = v_dim;
      }
      return cmd_verify(vopts, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wedge
