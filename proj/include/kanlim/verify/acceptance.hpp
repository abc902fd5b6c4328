#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kanlim::verify {

struct AcceptanceConfig {
  int p = 3;
  std::uint64_t seed = 42;
  int cases = 50;
  int max_rank = 3;
  int max_exp = 3;
  /// Worker threads for independent cases; results do not depend on it.
  int threads = 0;  // 0: hardware concurrency
};

/// Throws InvalidInput for a non-prime or even p, or non-positive bounds.
void validate(const AcceptanceConfig& config);

struct CriterionResult {
  std::string id;      // "A1".."A8"
  std::string title;
  std::string anchor;
  bool passed = true;
  int cases = 0;       // random cases run
  int failed = 0;      // cases with at least one failing clause
  std::vector<std::string> clauses;  // "pass|fail <clause>: <counts>"
  std::vector<std::string> details;  // first failing cases, with witnesses
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);
/// Subset by id; unknown ids throw InvalidInput.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config, const std::vector<std::string>& ids);

/// "PASS A1 <title> (n cases)" or "FAIL ...".
std::string summary_line(const CriterionResult& r);

}  // namespace kanlim::verify
