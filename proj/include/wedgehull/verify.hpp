#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wedge {

struct VerifyOptions {
  // geometry, i2, i1, appendix, limits, hull or all.
  std::string suite = "all";
  // Restricts the i2 and i1 suites to one dimension.
  std::optional<int> dim;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json witness;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_suites();

// Throws DomainError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace wedge
