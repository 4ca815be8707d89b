#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qig {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured quantities, or the error that stopped the check
  double seconds = 0.0;
};

struct CriterionInfo {
  int id;
  std::string name;
  std::string summary;
};

const std::vector<CriterionInfo>& acceptance_criteria();

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> only;  // names or numbers; empty runs everything
  unsigned workers = 1;
};

/// Runs the selected criteria in order. Throws DomainError when `only`
/// names an unknown criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace qig
