#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qcause/kernels.hpp"

namespace qcause {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  /// Empty: run everything. Otherwise a criterion runs when any filter entry
  /// equals one of its tags, its name, or its number.
  std::vector<std::string> only;
  Exec exec = Exec::parallel;
  /// Replaces a reference constant by name (negative control); see
  /// overridable_constants(). Unknown names are ignored here.
  std::map<std::string, double> overrides;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::vector<std::string> tags;
  std::function<CriterionResult(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// Names accepted in AcceptanceOptions::overrides.
const std::vector<std::string>& overridable_constants();

bool selected(const Criterion& c, const AcceptanceOptions& options);

/// Runs the selected criteria, writing one "PASS"/"FAIL" line per criterion
/// (plus indented detail lines) as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out);

}  // namespace qcause
