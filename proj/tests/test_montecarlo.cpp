#include "doctest.h"
#include "seqclass/montecarlo.hpp"

#include <cmath>

using namespace seqclass;

namespace {

ProblemInstance separated(double l0 = 0.05) {
  return {Dist{0.9, 0.1}, Dist{0.1, 0.9}, 1.0, 1.0, EpsilonFloor(0.01), LambdaSpec::constant(l0)};
}

TrialReport synthetic(long n, long trials, long errors) {
  TrialReport r;
  r.n = n;
  r.trials = r.trials_theta1 = trials;
  r.errors_theta1 = errors;
  return r;
}

}  // namespace

TEST_CASE("well separated pair: type-I errors are rare") {
  const auto r = run_trials(SetupKind::FullySeq, separated(), 0, 50, 10000, 42);
  CHECK(r.trials == 10000);
  CHECK(r.trials_theta0 == 10000);
  CHECK(static_cast<double>(r.errors_theta0) / r.trials <= 0.01);
}

TEST_CASE("stopping time: mean within n and support") {
  const auto inst = separated(0.1);
  for (SetupKind s : {SetupKind::FullySeq, SetupKind::Semi1, SetupKind::Semi2, SetupKind::FixedLength}) {
    for (int theta : {0, 1}) {
      const long n = 30;
      const auto r = run_trials(s, inst, theta, n, 2000, 7);
      CHECK(r.mean_tau() <= n + r.ci95_tau);
      long lo = r.tau_hist.begin()->first, hi = r.tau_hist.rbegin()->first;
      CHECK(r.mean_tau() >= lo);
      CHECK(r.mean_tau() <= hi);
      for (const auto& [tau, c] : r.tau_hist) {
        if (s == SetupKind::FixedLength) CHECK(tau == n);
        else CHECK((tau == n - 1 || tau == n * n));
      }
      CHECK(r.errors_theta0 + r.errors_theta1 <= r.trials);
    }
  }
}

TEST_CASE("determinism and thread independence") {
  const auto inst = separated();
  const auto a = run_trials(SetupKind::Semi1, inst, 1, 25, 500, 99);
  const auto b = run_trials(SetupKind::Semi1, inst, 1, 25, 500, 99);
  SimOptions three;
  three.threads = 3;
  const auto c = run_trials(SetupKind::Semi1, inst, 1, 25, 500, 99, three);
  for (const auto* x : {&b, &c}) {
    CHECK(x->errors_theta1 == a.errors_theta1);
    CHECK(x->tau_hist == a.tau_hist);
    CHECK(x->mean_tau_theta1 == a.mean_tau_theta1);
    CHECK(x->ci95_tau_theta1 == a.ci95_tau_theta1);
  }
  const auto model = make_model(SetupKind::Semi1, inst);
  const auto one = run_single_trial(*model, 1, 25, 1234);
  const auto again = run_single_trial(*model, 1, 25, 1234);
  CHECK(one.decision == again.decision);
  CHECK(one.tau == again.tau);
}

TEST_CASE("per-trial seeds do not depend on the trial count") {
  const auto inst = ProblemInstance{Dist{0.7, 0.3}, Dist{0.3, 0.7}, 1.0, 1.0, EpsilonFloor(0.01),
                                    LambdaSpec::constant(0.05)};
  const auto model = make_model(SetupKind::FullySeq, inst);
  long errors = 0;
  for (long t = 0; t < 300; ++t) {
    errors += run_single_trial(*model, 1, 20, hash_combine(5, static_cast<std::uint64_t>(t))).decision != 1;
    if (t == 149) CHECK(run_trials(*model, 1, 20, 150, 5).errors_theta1 == errors);
  }
  CHECK(run_trials(*model, 1, 20, 300, 5).errors_theta1 == errors);
}

TEST_CASE("merge") {
  const auto inst = separated();
  const auto a = run_trials(SetupKind::FullySeq, inst, 0, 20, 300, 1);
  const auto b = run_trials(SetupKind::FullySeq, inst, 1, 20, 200, 2);
  const auto m = merge(a, b);
  CHECK(m.trials == 500);
  CHECK(m.trials_theta0 == 300);
  CHECK(m.trials_theta1 == 200);
  CHECK(m.errors_theta1 == b.errors_theta1);
  CHECK(m.mean_tau_theta0 == doctest::Approx(a.mean_tau_theta0));
  CHECK(m.mean_tau_theta1 == doctest::Approx(b.mean_tau_theta1));
  long total = 0;
  for (const auto& [tau, c] : m.tau_hist) total += c;
  CHECK(total == 500);
  const auto other = run_trials(SetupKind::FullySeq, inst, 0, 30, 10, 1);
  CHECK_THROWS(merge(a, other));
}

TEST_CASE("type-I error frequency does not grow with n") {
  const ProblemInstance inst{Dist{0.8, 0.2}, Dist{0.2, 0.8}, 1.0, 1.0, EpsilonFloor(0.01), LambdaSpec::constant(0.05)};
  std::vector<TrialReport> reps;
  for (long n : {20L, 40L, 60L, 80L}) reps.push_back(run_trials(SetupKind::FullySeq, inst, 0, n, 3000, 17));
  for (std::size_t i = 1; i < reps.size(); ++i) {
    const auto a = wilson_interval(reps[i - 1].errors_theta0, reps[i - 1].trials_theta0);
    const auto b = wilson_interval(reps[i].errors_theta0, reps[i].trials_theta0);
    CHECK(b.lo <= a.hi);
  }
}

TEST_CASE("exponent fit on exact exponentials") {
  std::vector<TrialReport> reps;
  const long trials = 1L << 30;
  for (long n : {10L, 20L, 30L, 40L, 50L}) reps.push_back(synthetic(n, trials, trials >> (n / 5)));
  const auto f = estimate_exponent(reps, 1);
  CHECK(f.slope == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.n_grid.size() == 5);
}

TEST_CASE("exponent fit with a polynomial prefactor") {
  auto fit = [](long from, long to, long step) {
    std::vector<TrialReport> reps;
    const double trials = 1e15;
    for (long n = from; n <= to; n += step) {
      const double p = 1e-3 * std::pow(2.0, -0.2 * n) * std::pow(static_cast<double>(n), 3);
      reps.push_back(synthetic(n, static_cast<long>(trials), std::lround(trials * p)));
    }
    return estimate_exponent(reps, 1).slope;
  };
  const double small = fit(40, 120, 20);
  CHECK(small >= 0.1);
  CHECK(small <= 0.3);
  const double big = fit(120, 200, 20);
  CHECK(std::abs(big - 0.2) < std::abs(small - 0.2));
}

TEST_CASE("rare-event floor") {
  std::vector<TrialReport> zero;
  for (long n : {10L, 20L, 30L}) zero.push_back(synthetic(n, 1000, 0));
  CHECK_THROWS_AS(estimate_exponent(zero, 1), InsufficientData);
  std::vector<TrialReport> few{synthetic(10, 1000, 100), synthetic(20, 1000, 20), synthetic(30, 1000, 4)};
  CHECK_THROWS_WITH_AS(estimate_exponent(few, 1), doctest::Contains("insufficient rare-event data"), InsufficientData);
  few.push_back(synthetic(40, 100000, 50));
  CHECK(estimate_exponent(few, 1).n_grid == std::vector<long>{10, 20, 40});
}

TEST_CASE("wilson interval") {
  const auto w = wilson_interval(0, 100);
  CHECK(w.lo == 0.0);
  CHECK(w.hi > 0.0);
  CHECK(w.hi < 0.05);
  const auto h = wilson_interval(50, 100);
  CHECK(h.lo < 0.5);
  CHECK(h.hi > 0.5);
  CHECK(h.hi - 0.5 == doctest::Approx(0.5 - h.lo));
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS(run_trials(SetupKind::FullySeq, separated(), 0, 20, 0, 1));
  CHECK_THROWS(run_trials(SetupKind::FullySeq, separated(), 2, 20, 10, 1));
}
