#pragma once

#include "seqclass/exponents.hpp"
#include "seqclass/optimizer.hpp"
#include "seqclass/testbench.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqclass {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;  // lambda0 | xi | beta
  double from = 0;
  double to = 0;
  bool to_gjs = false;  // `to = gjs` means GJS(P0||P1, alpha)
  int points = 2;
  bool log_scale = false;
};

struct SimSpec {
  std::vector<SetupKind> setups{SetupKind::FullySeq};
  std::vector<long> n_grid{20, 40, 60};
  long trials = 10000;
  std::uint64_t seed = 1;
  long late_phase_cap = 0;
  std::vector<int> thetas{0, 1};
};

struct RunConfig {
  int schema = 1;
  std::string preset;
  std::optional<int> d;
  std::vector<double> P0{0.6, 0.4};
  std::vector<double> P1{0.1, 0.9};
  double alpha = 1.0;
  double beta = 1.0;
  double epsilon = 0.01;
  std::string lambda_family = "constant";  // constant | scaled_renyi
  double lambda0 = 0.05;
  double xi = 0.5;
  double offset = 0.0;
  std::optional<SweepSpec> sweep;
  int coarse_m = 0;  // 0 = default for the alphabet size
  int refine_rounds = 3;
  int refine_factor = 10;
  SimSpec sim;
  bool svg = true;
  bool svg_log_x = false;

  // Both throw ConfigError with a readable message.
  ProblemInstance instance() const;
  SearchConfig search_config() const;
  std::vector<double> sweep_values() const;
  // Instance with the sweep parameter set to v.
  ProblemInstance instance_at(double v) const;
};

RunConfig preset_config(const std::string& name);
// Applies `key = value` lines on top of cfg. A `schema = 1` line is required.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::optional<std::string>& path, const std::optional<std::string>& preset);
std::vector<std::string> known_config_keys();

}  // namespace seqclass
