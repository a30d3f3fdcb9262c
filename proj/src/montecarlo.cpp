#include "seqclass/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace seqclass {

double TrialReport::mean_tau() const {
  if (trials == 0) return 0.0;
  return static_cast<double>((tau_sum[0] + tau_sum[1]) / trials);
}

double TrialReport::sd_tau() const {
  if (trials < 2) return 0.0;
  const long double s = tau_sum[0] + tau_sum[1];
  const long double s2 = tau_sq_sum[0] + tau_sq_sum[1];
  const long double var = (s2 - s * s / trials) / (trials - 1);
  return var > 0 ? std::sqrt(static_cast<double>(var)) : 0.0;
}

double TrialReport::mean_tau_upper(double z) const {
  if (trials == 0) return 0.0;
  return mean_tau() + z * sd_tau() / std::sqrt(static_cast<double>(trials));
}

namespace {

void finalize(TrialReport& r) {
  const long t[2] = {r.trials_theta0, r.trials_theta1};
  double mean[2] = {0, 0}, ci[2] = {0, 0};
  for (int th = 0; th < 2; ++th) {
    if (t[th] == 0) continue;
    mean[th] = static_cast<double>(r.tau_sum[th] / t[th]);
    if (t[th] > 1) {
      const long double var = (r.tau_sq_sum[th] - r.tau_sum[th] * r.tau_sum[th] / t[th]) / (t[th] - 1);
      ci[th] = var > 0 ? 1.96 * std::sqrt(static_cast<double>(var) / t[th]) : 0.0;
    }
  }
  r.mean_tau_theta0 = mean[0];
  r.mean_tau_theta1 = mean[1];
  r.ci95_tau_theta0 = ci[0];
  r.ci95_tau_theta1 = ci[1];
  r.ci95_tau = r.trials > 1 ? 1.96 * r.sd_tau() / std::sqrt(static_cast<double>(r.trials)) : 0.0;
}

void accumulate(TrialReport& r, int theta, const TestOutcome& o) {
  ++r.trials;
  if (theta == 0) ++r.trials_theta0;
  else ++r.trials_theta1;
  if (o.decision != theta) {
    if (theta == 0) ++r.errors_theta0;
    else ++r.errors_theta1;
  }
  const long double tau = o.tau;
  r.tau_sum[theta] += tau;
  r.tau_sq_sum[theta] += tau * tau;
  ++r.tau_hist[o.tau];
  if (o.capped) ++r.capped;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEQCLASS_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

TestOutcome run_single_trial(const ClassificationModel& model, int theta, long n, std::uint64_t trial_seed,
                             const EngineOptions& opts) {
  if (theta != 0 && theta != 1) throw std::invalid_argument("theta must be 0 or 1");
  const ProblemInstance& inst = model.instance();
  const Dist& truth = theta == 0 ? inst.P0 : inst.P1;
  // stream ids follow the role, not the setup's ordering
  const IidSource x(truth, trial_seed, 0), t0(inst.P0, trial_seed, 1), t1(inst.P1, trial_seed, 2);
  if (model.setup() == SetupKind::FixedLength) {
    auto draw = [&](const IidSource& src, long count) {
      std::vector<int> s(static_cast<std::size_t>(count));
      for (long i = 0; i < count; ++i) s[static_cast<std::size_t>(i)] = src.at(static_cast<std::uint64_t>(i));
      return empirical(s, static_cast<int>(inst.dim())).dist();
    };
    const Dist q = draw(x, n);
    const Dist q0 = draw(t0, std::max(1L, ceil_count(inst.alpha, n)));
    const Dist q1 = draw(t1, std::max(1L, ceil_count(inst.beta, n)));
    const std::vector<Dist> tuple{q, q0, q1};
    return {model.g1_at(tuple) < 0.0 ? 0 : 1, n, Phase::Fixed, false};
  }
  const SampleSource* by_role[3] = {&x, &t0, &t1};
  const SampleSource* streams[3];
  for (std::size_t i = 0; i < 3; ++i) streams[i] = by_role[model.order()[i]];
  const auto alphas = model.alphas();
  return two_phase_test(streams, n, model, alphas, model.ell(), opts);
}

TrialReport run_trials(const ClassificationModel& model, int theta, long n, long trials, std::uint64_t seed,
                       const SimOptions& opts) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const EngineOptions eo{opts.late_phase_cap};
  const int threads = std::min<long>(resolve_threads(opts.threads), trials);
  std::vector<TrialReport> parts(static_cast<std::size_t>(threads));
  auto work = [&](int w) {
    TrialReport& r = parts[static_cast<std::size_t>(w)];
    const long from = trials * w / threads, to = trials * (w + 1) / threads;
    for (long t = from; t < to; ++t)
      accumulate(r, theta, run_single_trial(model, theta, n, hash_combine(seed, static_cast<std::uint64_t>(t)), eo));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  TrialReport out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = merge(out, parts[i]);
  out.setup = model.setup();
  out.n = n;
  finalize(out);
  return out;
}

TrialReport run_trials(SetupKind setup, const ProblemInstance& inst, int theta, long n, long trials,
                       std::uint64_t seed, const SimOptions& opts) {
  const auto model = make_model(setup, inst);
  return run_trials(*model, theta, n, trials, seed, opts);
}

TrialReport merge(const TrialReport& a, const TrialReport& b) {
  TrialReport r = a;
  if (a.trials > 0 && b.trials > 0 && a.n != b.n) throw std::invalid_argument("cannot merge reports with different n");
  if (a.trials == 0) {
    r.n = b.n;
    r.setup = b.setup;
  }
  r.trials += b.trials;
  r.trials_theta0 += b.trials_theta0;
  r.trials_theta1 += b.trials_theta1;
  r.errors_theta0 += b.errors_theta0;
  r.errors_theta1 += b.errors_theta1;
  r.capped += b.capped;
  for (int th = 0; th < 2; ++th) {
    r.tau_sum[th] += b.tau_sum[th];
    r.tau_sq_sum[th] += b.tau_sq_sum[th];
  }
  for (const auto& [tau, c] : b.tau_hist) r.tau_hist[tau] += c;
  finalize(r);
  return r;
}

ExponentFit estimate_exponent(const std::vector<TrialReport>& reports, int theta, long floor) {
  if (theta != 0 && theta != 1) throw std::invalid_argument("theta must be 0 or 1");
  std::vector<double> xs, ys;
  ExponentFit fit;
  for (const TrialReport& r : reports) {
    const long e = theta == 0 ? r.errors_theta0 : r.errors_theta1;
    const long t = theta == 0 ? r.trials_theta0 : r.trials_theta1;
    if (e < floor || t == 0) continue;
    xs.push_back(static_cast<double>(r.n));
    ys.push_back(-std::log2(static_cast<double>(e) / static_cast<double>(t)));
    fit.n_grid.push_back(r.n);
  }
  if (xs.size() < 3) throw InsufficientData("insufficient rare-event data: fewer than 3 n values with enough errors");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0) throw InsufficientData("insufficient rare-event data: n grid has no spread");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

Interval wilson_interval(long k, long m, double z) {
  if (m <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / m, z2 = z * z, mm = static_cast<double>(m);
  const double denom = 1 + z2 / mm;
  const double center = (p + z2 / (2 * mm)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / mm + z2 / (4 * mm * mm)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace seqclass
