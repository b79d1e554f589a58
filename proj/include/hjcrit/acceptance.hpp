#pragma once

#include <string>
#include <vector>

namespace hjcrit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;  ///< measured values against the pinned tolerances
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceOptions {
  bool fast = false;     ///< only the sub-second criteria 1-4; the rest are reported as skipped
  unsigned threads = 0;  ///< 0: hardware concurrency, capped by HJCRIT_THREADS
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;  ///< criteria 1-10 in order
  bool all_passed() const;               ///< skipped criteria do not count as failures
};

/// Worker count for the suite: hardware concurrency (at least 1), capped by
/// a positive integer in HJCRIT_THREADS.
unsigned verify_threads(unsigned requested = 0);

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  5  mass-dissipation identity  ...  (4.1 s / 60 s)"
std::string format_line(const CriterionResult& r);

}  // namespace hjcrit
