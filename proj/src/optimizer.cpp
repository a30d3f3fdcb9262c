#include "seqclass/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace seqclass {

namespace {

constexpr std::size_t kJointBudget = 4000;

int floor_count(const std::optional<EpsilonFloor>& eps, int m) {
  if (!eps) return 0;
  return static_cast<int>(std::ceil(eps->value() * m - 1e-9));
}

std::vector<Dist> collect(int m, std::span<const int> lo, std::span<const int> hi) {
  std::vector<Dist> out;
  for_each_composition(m, lo, hi, [&](std::span<const int> k) { out.push_back(composition_to_dist(k, m)); });
  return out;
}

// Box of half-width `half` counts around the incumbent, at density m.
std::vector<Dist> box_points(const Dist& center, int m, int kmin, int half) {
  const std::size_t d = center.size();
  std::vector<int> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int c = static_cast<int>(std::lround(center[i] * m));
    lo[i] = std::max(kmin, c - half);
    hi[i] = std::min(m, c + half);
    if (hi[i] < lo[i]) hi[i] = lo[i];
  }
  return collect(m, lo, hi);
}

struct PairState {
  double best = kInf;
  std::optional<Dist> a, b;
};

void try_pair(const BoundedPairObjective& obj, const PairConstraint& cons, const Dist& a, const Dist& b,
              PairState& st) {
  const double v = obj(a, b, st.best);
  if (!(v < st.best)) return;
  if (cons && !cons(a, b)) return;
  st.best = v;
  st.a = a;
  st.b = b;
}

SearchResult finish_pair(const PairState& st, std::vector<double> rounds) {
  SearchResult r;
  r.round_values = std::move(rounds);
  if (!st.a) return r;
  r.value = st.best;
  r.feasible_found = true;
  r.argmin = {*st.a, *st.b};
  return r;
}

}  // namespace

SearchConfig SearchConfig::defaults(std::size_t d, std::optional<EpsilonFloor> eps) {
  SearchConfig c;
  c.coarse_m = d <= 2 ? 200 : d == 3 ? 60 : d == 4 ? 24 : 12;
  c.eps = eps;
  return c;
}

void SearchConfig::validate() const {
  if (coarse_m < 2) throw std::invalid_argument("coarse_m must be >= 2");
  if (refine_rounds < 0) throw std::invalid_argument("refine_rounds must be >= 0");
  if (refine_factor < 2) throw std::invalid_argument("refine_factor must be >= 2");
  double m = coarse_m;
  for (int r = 0; r < refine_rounds; ++r) m *= refine_factor;
  if (m > 1e9) throw std::invalid_argument("refined grid density overflows");
}

std::vector<Dist> floored_grid(std::size_t d, int m, std::optional<EpsilonFloor> eps) {
  if (eps) eps->check_alphabet(d);
  SimplexGrid g(d, m);  // size guard
  (void)g;
  std::vector<int> lo(d, floor_count(eps, m)), hi(d, m);
  return collect(m, lo, hi);
}

SearchResult min_simplex(const Objective& objective, const Constraint& constraint, std::size_t d,
                         const SearchConfig& cfg) {
  cfg.validate();
  double best = kInf;
  std::optional<Dist> arg;
  auto consider = [&](const Dist& p) {
    const double v = objective(p);
    if (!(v < best)) return;
    if (constraint && !constraint(p)) return;
    best = v;
    arg = p;
  };
  for (const Dist& p : floored_grid(d, cfg.coarse_m, cfg.eps)) consider(p);
  SearchResult r;
  r.round_values.push_back(best);
  if (!arg) return r;
  int m = cfg.coarse_m;
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    m *= cfg.refine_factor;
    const Dist center = *arg;
    for (const Dist& p : box_points(center, m, floor_count(cfg.eps, m), 2 * cfg.refine_factor)) consider(p);
    r.round_values.push_back(best);
  }
  r.value = best;
  r.feasible_found = true;
  r.argmin = {*arg};
  return r;
}

SearchResult min_simplex_pair_bounded(const BoundedPairObjective& objective, const PairConstraint& constraint,
                                      std::size_t d, const SearchConfig& cfg) {
  cfg.validate();
  const std::vector<Dist> pts = floored_grid(d, cfg.coarse_m, cfg.eps);
  PairState st;
  for (const Dist& a : pts)
    for (const Dist& b : pts) try_pair(objective, constraint, a, b, st);
  std::vector<double> rounds{st.best};
  if (!st.a) return finish_pair(st, rounds);
  int m = cfg.coarse_m;
  const int half = 2 * cfg.refine_factor;
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    m *= cfg.refine_factor;
    const int kmin = floor_count(cfg.eps, m);
    // Joint pass over the product box when it is small; coupled constraints can stall
    // block-wise moves.
    {
      const std::vector<Dist> box_a = box_points(*st.a, m, kmin, half);
      const std::vector<Dist> box_b = box_points(*st.b, m, kmin, half);
      if (box_a.size() * box_b.size() <= kJointBudget)
        for (const Dist& a : box_a)
          for (const Dist& b : box_b) try_pair(objective, constraint, a, b, st);
    }
    for (int sweep = 0; sweep < 3; ++sweep) {
      const Dist fixed_b = *st.b;
      for (const Dist& a : box_points(*st.a, m, kmin, half)) try_pair(objective, constraint, a, fixed_b, st);
      const Dist fixed_a = *st.a;
      for (const Dist& b : box_points(*st.b, m, kmin, half)) try_pair(objective, constraint, fixed_a, b, st);
    }
    rounds.push_back(st.best);
  }
  return finish_pair(st, rounds);
}

SearchResult min_simplex_pair(const PairObjective& objective, const PairConstraint& constraint, std::size_t d,
                              const SearchConfig& cfg) {
  return min_simplex_pair_bounded([&](const Dist& a, const Dist& b, double) { return objective(a, b); },
                                  constraint, d, cfg);
}

SearchResult oracle_min_simplex(const Objective& objective, const Constraint& constraint, std::size_t d, int m,
                                std::optional<EpsilonFloor> eps) {
  SearchConfig cfg;
  cfg.coarse_m = m;
  cfg.refine_rounds = 0;
  cfg.eps = eps;
  return min_simplex(objective, constraint, d, cfg);
}

SearchResult oracle_min_simplex_pair_bounded(const BoundedPairObjective& objective, const PairConstraint& constraint,
                                             std::size_t d, int m, std::optional<EpsilonFloor> eps) {
  SearchConfig cfg;
  cfg.coarse_m = m;
  cfg.refine_rounds = 0;
  cfg.eps = eps;
  return min_simplex_pair_bounded(objective, constraint, d, cfg);
}

SearchResult oracle_min_simplex_pair(const PairObjective& objective, const PairConstraint& constraint,
                                     std::size_t d, int m, std::optional<EpsilonFloor> eps) {
  return oracle_min_simplex_pair_bounded([&](const Dist& a, const Dist& b, double) { return objective(a, b); },
                                         constraint, d, m, eps);
}

}  // namespace seqclass
