#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilcount {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // on failure: the offending tuple and the disagreeing values
  double seconds = 0.0;
};

// Runs the full verification sweep: every count, bijection audit, identity
// and probability the library is built to reproduce, each at its pinned
// parameter range. One result per criterion; failures carry a
// machine-readable record of what disagreed.
std::vector<CriterionResult> run_acceptance(unsigned workers, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace nilcount
