// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
// Arguments are criterion filters (ids, names or tags), as for `qcause verify --only`.

#include <iostream>

#include "qcause/acceptance.hpp"

int main(int argc, char** argv) {
  qcause::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.emplace_back(argv[i]);
  const auto results = qcause::run_acceptance(options, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return results.empty() || failed > 0 ? 1 : 0;
}
