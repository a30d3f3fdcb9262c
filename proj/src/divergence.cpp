#include "seqclass/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqclass {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

void require_full_support(const Dist& p, const char* what) {
  for (double v : p.probs())
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must have full support");
}

// log sum_x P^a Q^(1-a), computed around the max exponent.
double log_mix_sum(std::span<const double> P, std::span<const double> Q, double a) {
  const std::size_t d = P.size();
  double terms[64];
  std::vector<double> big;
  double* t = terms;
  if (d > 64) {
    big.resize(d);
    t = big.data();
  }
  double mx = -kInf;
  for (std::size_t i = 0; i < d; ++i) {
    t[i] = a * std::log(P[i]) + (1.0 - a) * std::log(Q[i]);
    mx = std::max(mx, t[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::exp(t[i] - mx);
  return mx + std::log(s);
}

}  // namespace

double kl_nats(std::span<const double> q, std::span<const double> p) {
  require_same_dim(q.size(), p.size());
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    if (p[i] <= 0.0) return kInf;
    s += q[i] * std::log(q[i] / p[i]);
  }
  // Rounding can push a true zero slightly negative.
  return s < 0.0 ? 0.0 : s;
}

double kl(const Dist& q, const Dist& p) { return kl_nats(q.probs(), p.probs()) / kLn2; }

double binary_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binary_kl arguments must lie in [0,1]");
  const double a[2] = {p, 1.0 - p};
  const double b[2] = {q, 1.0 - q};
  return kl_nats(a, b) / kLn2;
}

double renyi_frac_value(std::span<const double> P, std::span<const double> Q, double alpha) {
  require_same_dim(P.size(), Q.size());
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double a = alpha / (1.0 + alpha);
  const double v = -(1.0 + alpha) * log_mix_sum(P, Q, a) / kLn2;
  return v < 0.0 ? 0.0 : v;
}

Minimized renyi_frac(const Dist& P, const Dist& Q, double alpha) {
  require_same_dim(P.size(), Q.size());
  require_full_support(P, "P");
  require_full_support(Q, "Q");
  const double value = renyi_frac_value(P.probs(), Q.probs(), alpha);
  const double a = alpha / (1.0 + alpha);
  std::vector<double> w(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) w[i] = std::exp(a * std::log(P[i]) + (1.0 - a) * std::log(Q[i]));
  return {value, Dist::from_weights(w)};
}

double gjs_value(std::span<const double> P, std::span<const double> Q, double alpha) {
  require_same_dim(P.size(), Q.size());
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const double m = (alpha * P[i] + Q[i]) / (1.0 + alpha);
    if (P[i] > 0.0) s += alpha * P[i] * std::log(P[i] / m);
    if (Q[i] > 0.0) s += Q[i] * std::log(Q[i] / m);
  }
  s /= kLn2;
  return s < 0.0 ? 0.0 : s;
}

Minimized gjs(const Dist& P, const Dist& Q, double alpha) {
  require_same_dim(P.size(), Q.size());
  const double value = gjs_value(P.probs(), Q.probs(), alpha);
  std::vector<double> m(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) m[i] = (alpha * P[i] + Q[i]) / (1.0 + alpha);
  return {value, Dist::from_weights(m)};
}

Dist tilted(const Dist& P0, const Dist& P1, double rho) {
  require_same_dim(P0.size(), P1.size());
  require_full_support(P0, "P0");
  require_full_support(P1, "P1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  if (rho == 0.0) return P0;
  if (rho == 1.0) return P1;
  const std::size_t d = P0.size();
  std::vector<double> t(d);
  double mx = -kInf;
  for (std::size_t i = 0; i < d; ++i) {
    t[i] = (1.0 - rho) * std::log(P0[i]) + rho * std::log(P1[i]);
    mx = std::max(mx, t[i]);
  }
  for (double& v : t) v = std::exp(v - mx);
  return Dist::from_weights(t);
}

TradeoffPoint tradeoff_point(const Dist& P0, const Dist& P1, double rho) {
  const Dist pr = tilted(P0, P1, rho);
  return {rho, kl(pr, P0), kl(pr, P1)};
}

TradeoffPoint bht_tradeoff_point(const Dist& P0, const Dist& P1, double e0) {
  if (!(e0 > 0.0)) throw std::invalid_argument("bht_tradeoff needs e0 > 0");
  require_full_support(P0, "P0");
  require_full_support(P1, "P1");
  const double top = kl(P1, P0);
  if (e0 >= top) return {1.0, top, 0.0};
  const double tol = std::min(1e-10, 1e-3 * e0);
  double lo = 0.0, hi = 1.0;
  TradeoffPoint best = tradeoff_point(P0, P1, 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    best = tradeoff_point(P0, P1, mid);
    if (std::abs(best.e0 - e0) <= tol) break;
    if (best.e0 < e0) lo = mid;
    else hi = mid;
  }
  return best;
}

double bht_tradeoff(const Dist& P0, const Dist& P1, double e0) { return bht_tradeoff_point(P0, P1, e0).e1; }

}  // namespace seqclass
