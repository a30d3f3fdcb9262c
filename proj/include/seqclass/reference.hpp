#pragma once

// Brute-force counterparts of the solver routines. Everything here is a pure grid walk with
// no refinement; it exists for tests, acceptance checks and `verify`.

#include "seqclass/exponents.hpp"
#include "seqclass/simplex.hpp"

#include <optional>
#include <vector>

namespace seqclass::reference {

// Grid points at density m whose entries are all >= floor (floor 0 = whole simplex).
std::vector<Dist> grid_points(std::size_t d, int m, double floor);

double renyi_grid(const Dist& P, const Dist& Q, double alpha, int m);
double gjs_grid(const Dist& P, const Dist& Q, double alpha, int m);
// Entropy form H(M) - (H(P)+H(Q))/2, bits.
double js_entropy_form(const Dist& P, const Dist& Q);
double bht_grid(const Dist& P0, const Dist& P1, double e0, int m);
double kl_defining_sum(const Dist& q, const Dist& p);

// Constant lambda, GJS-constrained primal forms.
double kappa_constant_grid(const ProblemInstance& inst, int m);
double e_fix_constant_grid(const ProblemInstance& inst, int m);

// Exhaustive search over ball centres (any lambda family).
double kappa_center_grid(const ProblemInstance& inst, int m);
double e_fix_center_grid(const ProblemInstance& inst, int m);

// Pure grid over (Q0,Q1) with the inner infimum over P1' also a pure grid.
double mu_grid(const ProblemInstance& inst, int m);

// g1 with the infimum over (P0',P1') taken over the floored grid at density m.
double g1_grid(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, int m);

// Does some floored grid pair (Q0,Q1) have grid-g1(Q1,Q0,Q1) < 0, all grids at density m?
struct GridWitness {
  bool found = false;
  std::optional<Dist> Q0, Q1, P0c, P1c;
};
GridWitness kappa_grid_feasible(const ProblemInstance& inst, int m);

// Primal minimum over one ball centre by brute force over (Q0,Q1) / (Q,Q0,Q1) at density m.
double kappa_ball_grid(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, int m);
double e_fix_ball_grid(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, int m);

}  // namespace seqclass::reference
