#pragma once

#include "seqclass/simplex.hpp"

#include <limits>
#include <span>

namespace seqclass {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

struct Minimized {
  double value;  // bits
  Dist minimizer;
};

struct TradeoffPoint {
  double rho;
  double e0;  // KL(P_rho || P0), bits
  double e1;  // KL(P_rho || P1), bits
};

// All public results are in bits.
double kl(const Dist& q, const Dist& p);
double kl_nats(std::span<const double> q, std::span<const double> p);
double binary_kl(double p, double q);

// min_V alpha*KL(V||P) + KL(V||Q), with V* proportional to P^{a/(1+a)} Q^{1/(1+a)}.
Minimized renyi_frac(const Dist& P, const Dist& Q, double alpha);
double renyi_frac_value(std::span<const double> P, std::span<const double> Q, double alpha);

// alpha*KL(P||M) + KL(Q||M), M = (alpha P + Q)/(1 + alpha).
Minimized gjs(const Dist& P, const Dist& Q, double alpha);
double gjs_value(std::span<const double> P, std::span<const double> Q, double alpha);

Dist tilted(const Dist& P0, const Dist& P1, double rho);
TradeoffPoint tradeoff_point(const Dist& P0, const Dist& P1, double rho);

// inf { KL(Q||P1) : KL(Q||P0) <= e0 }.
double bht_tradeoff(const Dist& P0, const Dist& P1, double e0);
TradeoffPoint bht_tradeoff_point(const Dist& P0, const Dist& P1, double e0);

}  // namespace seqclass
