#include "seqclass/reference.hpp"

#include "seqclass/divergence.hpp"

#include <cmath>
#include <stdexcept>

namespace seqclass::reference {

std::vector<Dist> grid_points(std::size_t d, int m, double floor) {
  std::vector<Dist> out;
  for (const Dist& p : SimplexGrid(d, m)) {
    bool ok = true;
    for (double v : p.probs()) ok = ok && v >= floor - 1e-15;
    if (ok) out.push_back(p);
  }
  return out;
}

double kl_defining_sum(const Dist& q, const Dist& p) {
  // straight log2 per term, no shared code with the solver's KL
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0) return kInf;
    s += q[i] * std::log2(q[i] / p[i]);
  }
  return s;
}

double renyi_grid(const Dist& P, const Dist& Q, double alpha, int m) {
  double best = kInf;
  for (const Dist& V : SimplexGrid(P.size(), m))
    best = std::min(best, alpha * kl_defining_sum(V, P) + kl_defining_sum(V, Q));
  return best;
}

double gjs_grid(const Dist& P, const Dist& Q, double alpha, int m) {
  double best = kInf;
  for (const Dist& V : SimplexGrid(P.size(), m))
    best = std::min(best, alpha * kl_defining_sum(P, V) + kl_defining_sum(Q, V));
  return best;
}

double js_entropy_form(const Dist& P, const Dist& Q) {
  auto H = [](auto&& f, std::size_t d) {
    double h = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double v = f(i);
      if (v > 0) h -= v * std::log2(v);
    }
    return h;
  };
  const std::size_t d = P.size();
  const double hm = H([&](std::size_t i) { return 0.5 * (P[i] + Q[i]); }, d);
  return hm - 0.5 * (H([&](std::size_t i) { return P[i]; }, d) + H([&](std::size_t i) { return Q[i]; }, d));
}

double bht_grid(const Dist& P0, const Dist& P1, double e0, int m) {
  double best = kInf;
  for (const Dist& Q : SimplexGrid(P0.size(), m))
    if (kl_defining_sum(Q, P0) <= e0) best = std::min(best, kl_defining_sum(Q, P1));
  return best;
}

namespace {

template <class Obj, class Cons>
double pair_walk(const std::vector<Dist>& A, const std::vector<Dist>& B, Obj obj, Cons cons) {
  double best = kInf;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      const double v = obj(i, j);
      if (v < best && cons(i, j)) best = v;
    }
  return best;
}

std::vector<double> map_kl(const std::vector<Dist>& pts, const Dist& ref, double w, bool ref_first = false) {
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    out[i] = w * (ref_first ? kl_defining_sum(ref, pts[i]) : kl_defining_sum(pts[i], ref));
  return out;
}

}  // namespace

double kappa_constant_grid(const ProblemInstance& inst, int m) {
  if (!inst.lambda.is_constant()) throw std::invalid_argument("constant lambda required");
  const double l0 = inst.lambda.as_constant().lambda0;
  const auto pts = grid_points(inst.dim(), m, inst.eps.value());
  const auto a = map_kl(pts, inst.P0, inst.alpha);
  const auto b = map_kl(pts, inst.P1, 1.0 + inst.beta);
  return pair_walk(
      pts, pts, [&](std::size_t i, std::size_t j) { return a[i] + b[j]; },
      [&](std::size_t i, std::size_t j) { return gjs_value(pts[i].probs(), pts[j].probs(), inst.alpha) <= l0; });
}

double e_fix_constant_grid(const ProblemInstance& inst, int m) {
  if (!inst.lambda.is_constant()) throw std::invalid_argument("constant lambda required");
  const double l0 = inst.lambda.as_constant().lambda0;
  const auto pts = grid_points(inst.dim(), m, inst.eps.value());
  const auto a = map_kl(pts, inst.P1, 1.0);
  const auto b = map_kl(pts, inst.P0, inst.alpha);
  // i indexes Q, j indexes Q0
  return pair_walk(
      pts, pts, [&](std::size_t i, std::size_t j) { return a[i] + b[j]; },
      [&](std::size_t i, std::size_t j) { return gjs_value(pts[j].probs(), pts[i].probs(), inst.alpha) <= l0; });
}

namespace {

template <class Ball>
double center_walk(const ProblemInstance& inst, int m, Ball ball) {
  const auto pts = grid_points(inst.dim(), m, inst.eps.value());
  double best = kInf, hint = 0.0;
  for (const Dist& A : pts)
    for (const Dist& B : pts) best = std::min(best, ball(inst, A, B, best, &hint));
  return best;
}

}  // namespace

double kappa_center_grid(const ProblemInstance& inst, int m) {
  return center_walk(inst, m, [](const ProblemInstance& i, const Dist& A, const Dist& B, double c, double* h) {
    return kappa_ball(i, A, B, c, h);
  });
}

double e_fix_center_grid(const ProblemInstance& inst, int m) {
  return center_walk(inst, m, [](const ProblemInstance& i, const Dist& A, const Dist& B, double c, double* h) {
    return e_fix_ball(i, A, B, c, h);
  });
}

double mu_grid(const ProblemInstance& inst, int m) {
  const auto q = grid_points(inst.dim(), m, 0.0);
  const auto centers = grid_points(inst.dim(), m, inst.eps.value());
  std::vector<double> lam(centers.size());
  for (std::size_t k = 0; k < centers.size(); ++k) lam[k] = inst.lambda_at(inst.P1, centers[k]);
  std::vector<double> G(q.size(), kInf);
  for (std::size_t j = 0; j < q.size(); ++j)
    for (std::size_t k = 0; k < centers.size(); ++k)
      G[j] = std::min(G[j], inst.beta * kl_defining_sum(q[j], centers[k]) - lam[k]);
  const auto a = map_kl(q, inst.P0, inst.alpha);
  const auto b = map_kl(q, inst.P1, inst.beta);
  const auto c = map_kl(q, inst.P1, inst.alpha);
  return pair_walk(
      q, q, [&](std::size_t i, std::size_t j) { return a[i] + b[j]; },
      [&](std::size_t i, std::size_t j) { return c[i] + G[j] < 0.0; });
}

double g1_grid(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, int m) {
  const auto pts = grid_points(inst.dim(), m, inst.eps.value());
  double best = kInf;
  for (const Dist& A : pts) {
    const double part = kl_defining_sum(Q, A) + inst.alpha * kl_defining_sum(Q0, A);
    for (const Dist& B : pts)
      best = std::min(best, part + inst.beta * kl_defining_sum(Q1, B) - inst.lambda_at(A, B));
  }
  return best;
}

GridWitness kappa_grid_feasible(const ProblemInstance& inst, int m) {
  // The sum separates once the centre is fixed: alpha KL(Q0||P0') + [KL(Q1||P0') + beta KL(Q1||P1')].
  const auto pts = grid_points(inst.dim(), m, inst.eps.value());
  GridWitness w;
  for (const Dist& A : pts) {
    double best0 = kInf;
    const Dist* q0 = nullptr;
    for (const Dist& Q0 : pts) {
      const double v = inst.alpha * kl_defining_sum(Q0, A);
      if (v < best0) best0 = v, q0 = &Q0;
    }
    for (const Dist& B : pts) {
      double best1 = kInf;
      const Dist* q1 = nullptr;
      for (const Dist& Q1 : pts) {
        const double v = kl_defining_sum(Q1, A) + inst.beta * kl_defining_sum(Q1, B);
        if (v < best1) best1 = v, q1 = &Q1;
      }
      if (best0 + best1 - inst.lambda_at(A, B) < -1e-12) {
        w.found = true;
        w.Q0 = *q0;
        w.Q1 = *q1;
        w.P0c = A;
        w.P1c = B;
        return w;
      }
    }
  }
  return w;
}

double kappa_ball_grid(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, int m) {
  const double r = inst.lambda_at(P0c, P1c);
  const auto pts = grid_points(inst.dim(), m, 0.0);
  return pair_walk(
      pts, pts,
      [&](std::size_t i, std::size_t j) {
        return inst.alpha * kl_defining_sum(pts[i], inst.P0) + (1 + inst.beta) * kl_defining_sum(pts[j], inst.P1);
      },
      [&](std::size_t i, std::size_t j) {
        return inst.alpha * kl_defining_sum(pts[i], P0c) + kl_defining_sum(pts[j], P0c) +
                   inst.beta * kl_defining_sum(pts[j], P1c) <
               r;
      });
}

double e_fix_ball_grid(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, int m) {
  const double r = inst.lambda_at(P0c, P1c);
  const auto pts = grid_points(inst.dim(), m, 0.0);
  double best = kInf;
  for (const Dist& Q : pts)
    for (const Dist& Q0 : pts)
      for (const Dist& Q1 : pts) {
        const double v = kl_defining_sum(Q, inst.P1) + inst.alpha * kl_defining_sum(Q0, inst.P0) +
                         inst.beta * kl_defining_sum(Q1, inst.P1);
        if (!(v < best)) continue;
        if (kl_defining_sum(Q, P0c) + inst.alpha * kl_defining_sum(Q0, P0c) + inst.beta * kl_defining_sum(Q1, P1c) < r)
          best = v;
      }
  return best;
}

}  // namespace seqclass::reference
