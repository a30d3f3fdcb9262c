#pragma once

#include "seqclass/divergence.hpp"
#include "seqclass/simplex.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace seqclass {

struct SearchConfig {
  int coarse_m = 200;
  int refine_rounds = 3;
  int refine_factor = 10;
  std::optional<EpsilonFloor> eps;

  // 200 for d=2, 60 for d=3, smaller beyond.
  static SearchConfig defaults(std::size_t d, std::optional<EpsilonFloor> eps = std::nullopt);
  void validate() const;
};

struct SearchResult {
  double value = kInf;
  std::vector<Dist> argmin;
  bool feasible_found = false;
  // Incumbent value after the coarse pass and after each refinement round.
  std::vector<double> round_values;
};

using Objective = std::function<double(const Dist&)>;
using Constraint = std::function<bool(const Dist&)>;
using PairObjective = std::function<double(const Dist&, const Dist&)>;
using PairConstraint = std::function<bool(const Dist&, const Dist&)>;
// May return any value >= cutoff whenever the true value is >= cutoff.
using BoundedPairObjective = std::function<double(const Dist&, const Dist&, double cutoff)>;

// An empty constraint means "always feasible". Constraints are only consulted for points
// whose objective would improve the incumbent.
SearchResult min_simplex(const Objective& objective, const Constraint& constraint, std::size_t d,
                         const SearchConfig& cfg);
SearchResult min_simplex_pair(const PairObjective& objective, const PairConstraint& constraint,
                              std::size_t d, const SearchConfig& cfg);
SearchResult min_simplex_pair_bounded(const BoundedPairObjective& objective, const PairConstraint& constraint,
                                      std::size_t d, const SearchConfig& cfg);

// Exhaustive grid at density m, no refinement.
SearchResult oracle_min_simplex(const Objective& objective, const Constraint& constraint, std::size_t d, int m,
                                std::optional<EpsilonFloor> eps);
SearchResult oracle_min_simplex_pair(const PairObjective& objective, const PairConstraint& constraint,
                                     std::size_t d, int m, std::optional<EpsilonFloor> eps);
SearchResult oracle_min_simplex_pair_bounded(const BoundedPairObjective& objective, const PairConstraint& constraint,
                                             std::size_t d, int m, std::optional<EpsilonFloor> eps);

// Grid points at density m that satisfy the floor, in lexicographic order.
std::vector<Dist> floored_grid(std::size_t d, int m, std::optional<EpsilonFloor> eps);

}  // namespace seqclass
