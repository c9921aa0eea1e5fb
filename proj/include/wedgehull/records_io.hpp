#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgehull/experiments.hpp"
#include "wedgehull/formulas.hpp"

namespace wedge {

inline constexpr const char* kCsvHeader = "model,d,j,size_param,rep,facets,vertices,stream_id,wall_ms,flag";

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records);
// Throws DomainError on a malformed header or row.
std::vector<RunRecord> read_records_csv(std::istream& is);

// "start:stop:xF" (geometric, factor F), "start:stop:+S" (arithmetic) or a
// comma-separated list. Throws DomainError.
std::vector<double> parse_grid(const std::string& text);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Missing keys keep their defaults; "grid" may be an array or a grid string.
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ExperimentSummary {
  ExperimentConfig config;
  GridSummary summary;
  std::optional<SlopeFit> fit;
  // Second regression against (log n)^{j-1} for the conjecture probe.
  std::optional<SlopeFit> fit_power;
  std::optional<ModelConstants> constants;
  // Slope predicted for this model: c_{d,2}, 0 for the half-sphere, 2ℓ/3
  // for the polygon baseline; absent for the probe.
  std::optional<double> theory_slope;
};

nlohmann::json summary_to_json(const ExperimentSummary& s);

}  // namespace wedge
