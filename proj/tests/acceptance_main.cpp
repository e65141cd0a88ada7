// Runs every acceptance criterion and prints one pass/fail line per
// criterion; exits nonzero if any fails.

#include <iostream>

#include "nilcount/acceptance.hpp"
#include "nilcount/parallel.hpp"

int main() {
  const auto results = nilcount::run_acceptance(nilcount::default_workers(), &std::cout);
  const bool ok = nilcount::all_passed(results);
  std::cout << (ok ? "all criteria passed" : "ACCEPTANCE FAILURES PRESENT") << std::endl;
  return ok ? 0 : 1;
}
