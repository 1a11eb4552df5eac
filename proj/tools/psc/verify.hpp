#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace psc::cli {

struct SuiteResult {
  std::string id;
  std::string name;
  bool pass = false;
  nlohmann::ordered_json details;
};

struct SuiteInfo {
  std::string id;    ///< short tag used in reports, e.g. "a17"
  std::string name;  ///< descriptive alias accepted by --suite
  std::string description;
};

const std::vector<SuiteInfo>& suite_catalog();

/// Runs "all", one id, or one alias. Throws UsageError for unknown names.
/// Suite i draws from RngStream(seed, fixed per-suite stream id), so a suite's
/// verdict does not depend on which other suites run.
std::vector<SuiteResult> run_suites(const std::string& selection, std::uint64_t seed);

}  // namespace psc::cli
