#include "wedgehull/records_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wedgehull/errors.hpp"

namespace wedge {

namespace {

std::string format_double(double x, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const char* what) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) throw DomainError(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

template <class Int>
Int parse_int(const std::string& s, const char* what) {
  const std::string t = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw DomainError(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

nlohmann::json fit_json(const SlopeFit& f) {
  return {{"slope", f.slope},
          {"slope_se", f.slope_std_error},
          {"intercept", f.intercept},
          {"r2", f.r_squared},
          {"window", f.grid_points_used},
          {"weighted", f.weighted},
          {"log_power", f.log_power}};
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << to_string(r.model) << ',' << r.d << ',' << r.j << ',' << format_double(r.size_param, "%.17g") << ','
       << r.rep << ',' << r.facets << ',' << r.vertices << ',' << r.stream_id << ','
       << format_double(r.wall_ms, "%.3f") << ',' << r.flag << '\n';
  }
}

std::vector<RunRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != kCsvHeader) throw DomainError("records CSV: unexpected header");
  std::vector<RunRecord> out;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 10) throw DomainError("records CSV: expected 10 fields in '" + line + "'");
    RunRecord r;
    r.model = parse_model(f[0]);
    r.d = parse_int<int>(f[1], "d");
    r.j = parse_int<int>(f[2], "j");
    r.size_param = parse_double(f[3], "size_param");
    r.rep = parse_int<int>(f[4], "rep");
    r.facets = parse_int<std::size_t>(f[5], "facets");
    r.vertices = parse_int<std::size_t>(f[6], "vertices");
    r.stream_id = parse_int<std::uint64_t>(f[7], "stream_id");
    r.wall_ms = parse_double(f[8], "wall_ms");
    r.flag = f[9];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw DomainError("empty grid");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3 || parts[2].size() < 2) throw DomainError("grid '" + t + "' is not start:stop:xF or start:stop:+S");
    const double start = parse_double(parts[0], "grid start");
    const double stop = parse_double(parts[1], "grid stop");
    const double step = parse_double(parts[2].substr(1), "grid step");
    if (parts[2][0] == 'x') {
      if (!(start > 0.0) || !(step > 1.0)) throw DomainError("geometric grid needs start > 0 and factor > 1");
      // Multiply from the start so integer grids stay exact.
      for (double v = start; v <= stop * (1.0 + 1e-12); v *= step) out.push_back(v);
    } else if (parts[2][0] == '+') {
      if (!(step > 0.0)) throw DomainError("arithmetic grid needs a positive step");
      for (std::size_t k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop * (1.0 + 1e-12)) break;
        out.push_back(v);
      }
    } else {
      throw DomainError("grid step must start with 'x' or '+'");
    }
  } else {
    for (const auto& p : split(t, ',')) out.push_back(parse_double(p, "grid value"));
  }
  if (out.empty()) throw DomainError("grid '" + t + "' has no points");
  return out;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j = {{"model", to_string(cfg.model)},
                      {"d", cfg.d},
                      {"j", cfg.j},
                      {"ell", cfg.ell},
                      {"grid", cfg.grid},
                      {"reps", cfg.reps},
                      {"master_seed", cfg.master_seed},
                      {"fit_window", effective_fit_window(cfg)},
                      {"output_path", cfg.output_path},
                      {"constants_samples", cfg.constants_samples},
                      {"config_hash", config_hash(cfg)}};
  if (!cfg.normals.empty()) j["normals"] = cfg.normals;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config: expected a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("model")) cfg.model = parse_model(j.at("model").get<std::string>());
    if (j.contains("d")) cfg.d = j.at("d").get<int>();
    if (j.contains("j")) cfg.j = j.at("j").get<int>();
    if (j.contains("ell")) cfg.ell = j.at("ell").get<int>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      cfg.grid = g.is_string() ? parse_grid(g.get<std::string>()) : g.get<std::vector<double>>();
    }
    if (j.contains("reps")) cfg.reps = j.at("reps").get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("fit_window")) cfg.fit_window = j.at("fit_window").get<std::vector<double>>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("normals")) cfg.normals = j.at("normals").get<std::vector<std::vector<double>>>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("constants_samples")) cfg.constants_samples = j.at("constants_samples").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return cfg;
}

nlohmann::json summary_to_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["config"] = config_to_json(s.config);
  j["grid"] = s.summary.grid;
  j["means"] = s.summary.means;
  j["std_errors"] = s.summary.std_errors;
  j["fit"] = s.fit ? fit_json(*s.fit) : nlohmann::json(nullptr);
  if (s.fit_power) j["fit_power"] = fit_json(*s.fit_power);
  if (s.constants) {
    j["constants"] = {{"A_d", s.constants->A_d},
                      {"A_d_se", s.constants->A_d_std_error},
                      {"c_d2_theory", s.constants->c_d2}};
  } else {
    j["constants"] = nullptr;
  }
  j["theory_slope"] = s.theory_slope ? nlohmann::json(*s.theory_slope) : nlohmann::json(nullptr);
  return j;
}

}  // namespace wedge
