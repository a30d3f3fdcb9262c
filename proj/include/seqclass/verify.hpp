#pragma once

#include <functional>
#include <string>
#include <vector>

namespace seqclass {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

enum class VerifyLevel { Quick, Full };
VerifyLevel level_from_string(const std::string& s);
std::vector<int> criteria_for(VerifyLevel level);
std::string criterion_name(int id);
CheckResult run_criterion(int id);

// Agreement tolerances pass through here; SEQCLASS_TOL_OVERRIDE replaces them all.
double tolerance(double nominal);

}  // namespace seqclass
