#pragma once

#include "seqclass/exponents.hpp"
#include "seqclass/testbench.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace seqclass {

struct TrialReport {
  SetupKind setup = SetupKind::FullySeq;
  long n = 0;
  long trials = 0;
  long trials_theta0 = 0;
  long trials_theta1 = 0;
  long errors_theta0 = 0;
  long errors_theta1 = 0;
  double mean_tau_theta0 = 0;
  double mean_tau_theta1 = 0;
  double ci95_tau_theta0 = 0;
  double ci95_tau_theta1 = 0;
  std::map<long, long> tau_hist;
  double ci95_tau = 0;  // half-width over all trials in the report
  long capped = 0;      // trials whose late phase hit the cap

  // Raw sums kept so that reports merge exactly.
  long double tau_sum[2] = {0, 0};
  long double tau_sq_sum[2] = {0, 0};

  double mean_tau() const;
  double sd_tau() const;
  // One-sided upper confidence bound on E[tau] (z = 2.326 for 99%).
  double mean_tau_upper(double z = 2.326) const;
};

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::vector<long> n_grid;
};

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimOptions {
  long late_phase_cap = 0;
  int threads = 0;  // 0 = SEQCLASS_THREADS or 1
};

int resolve_threads(int requested);

TestOutcome run_single_trial(const ClassificationModel& model, int theta, long n, std::uint64_t trial_seed,
                             const EngineOptions& opts = {});

TrialReport run_trials(SetupKind setup, const ProblemInstance& inst, int theta, long n, long trials,
                       std::uint64_t seed, const SimOptions& opts = {});
TrialReport run_trials(const ClassificationModel& model, int theta, long n, long trials, std::uint64_t seed,
                       const SimOptions& opts = {});

TrialReport merge(const TrialReport& a, const TrialReport& b);

// Least squares of -log2(errors/trials) against n over points with at least `floor` errors.
ExponentFit estimate_exponent(const std::vector<TrialReport>& reports, int theta, long floor = 5);

// Wilson score interval for k successes in m trials.
struct Interval {
  double lo, hi;
};
Interval wilson_interval(long k, long m, double z = 1.96);

}  // namespace seqclass
