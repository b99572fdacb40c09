// The verification harness: a registry of named numeric checks, each
// binding one claim to computed and expected values at a pinned tolerance,
// plus deterministic report generation.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entkit/io.hpp"

namespace entkit {

struct CheckResult {
  std::string check_id;
  std::string claim;
  std::map<std::string, std::string> params;
  std::map<std::string, double> computed;
  std::map<std::string, double> expected;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

struct VerifyConfig {
  std::uint64_t seed = 20240809;
  std::optional<double> tolerance;  // overrides each check's default
  std::optional<int> samples;
  std::optional<int> dim;
  std::optional<int> k;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::string out_path;
  std::string format = "json";
};

struct CheckDef {
  std::string id;
  std::string description;
  std::string claim;
  std::vector<std::string> covers;  // claim tags for the coverage meta-test
  std::function<CheckResult(const VerifyConfig&)> run;
};

const std::vector<CheckDef>& check_registry();

std::vector<const CheckDef*> list_checks();

/// Runs one check; throws std::out_of_range for an unknown id.
CheckResult run_check(const std::string& id, const VerifyConfig& cfg);

struct Report {
  VerifyConfig config;
  std::vector<CheckResult> results;  // sorted by check_id
  int total = 0;
  int passed = 0;
};

Report run_all(const VerifyConfig& cfg);

Json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);
Json check_to_json(const CheckResult& r);

}  // namespace entkit
