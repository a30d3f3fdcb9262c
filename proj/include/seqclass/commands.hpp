#pragma once

#include "seqclass/config.hpp"
#include "seqclass/output.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqclass {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitIo = 3, kExitFloor = 4, kExitInvariant = 5 };

struct InvariantBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rows of the configured sweep. Throws InvariantBreach if a row breaks the ordering chain.
std::vector<CurveRow> compute_curve(const RunConfig& cfg);

struct SimulationOutput {
  std::vector<TrialReport> reports;
  std::string trials_csv;
  std::string summary_json;
  bool floor_failure = false;
  std::vector<std::string> warnings;
};
SimulationOutput compute_simulation(const RunConfig& cfg);

std::string exponents_json(const RunConfig& cfg);

// Each returns an exit code and never throws.
int cmd_exponents(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& cfg, const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& out, std::ostream& err);
// criteria empty = every criterion of the level
int cmd_verify(const std::string& level, const std::vector<int>& criteria, std::ostream& out, std::ostream& err);

}  // namespace seqclass
