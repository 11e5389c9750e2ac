#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ncfold/errors.hpp"
#include "ncfold/rational.hpp"
#include "ncfold/report_json.hpp"

namespace ncfold {

struct CheckResult {
  int id = 0;
  std::string group;
  std::string title;
  bool passed = false;
  std::string detail;  ///< one line: what was measured against what
  double seconds = 0;
  Json data;           ///< full report written to <group>.json
};

struct ReproduceOptions {
  /// Groups to run; empty means all.
  std::vector<std::string> only;
  /// Report directory; nothing is written when unset.
  std::optional<std::filesystem::path> out_dir;
  std::uint64_t seed = 20240601;
  std::size_t workers = 1;
  std::uint64_t budget = kDefaultBudget;
  /// Replaces tau_2 in the chain parameters used by the balance check.
  std::optional<Rational> tau2_override;
  std::size_t bracket_n = 2000;
  std::size_t bracket_samples = 500;
  std::size_t trend_samples = 2000;
  std::size_t concentration_samples = 100000;
  std::size_t ergodic_length = 1000000;
};

/// Group names in run order: census, oracle, invariance, greedy, constants,
/// balance, truncated, ergodic, bounds, trivial, concentration, bracket.
const std::vector<std::string>& check_groups();

/// Runs the selected checks in order. Throws std::invalid_argument for an
/// unknown group name. A check that throws is reported as failed.
std::vector<CheckResult> reproduce_paper(const ReproduceOptions& options);

/// Writes <group>.json per check, census.csv, concentration.csv and
/// summary.json into dir (created if missing).
void write_reports(const std::filesystem::path& dir, const ReproduceOptions& options,
                   const std::vector<CheckResult>& results);

}  // namespace ncfold
