#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "netlab/rng.hpp"

namespace netlab {

struct CriterionResult {
  std::string id;     // "A1" ... "A10"
  std::string title;
  bool pass = false;
  std::string detail;  // measured values against their tolerances
  double seconds = 0.0;
};

// "A1" ... "A10", "all", and "section-6-2" (the four closed-form predictive
// probabilities, same as A1).
std::vector<std::string> suite_names();

// Runs every criterion in the suite. Throws ValidationError for an unknown
// suite name.
std::vector<CriterionResult> run_suite(std::string_view name, Seed seed = 0);

std::string format_result(const CriterionResult& r);

}  // namespace netlab
