#include "seqclass/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace seqclass {

LambdaSpec LambdaSpec::constant(double lambda0) {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw std::invalid_argument("lambda0 must be positive");
  return LambdaSpec(ConstantLambda{lambda0});
}

LambdaSpec LambdaSpec::scaled_renyi(double xi, double offset) {
  if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in (0,1]");
  if (!(offset >= 0.0) || !std::isfinite(offset)) throw std::invalid_argument("offset must be >= 0");
  return LambdaSpec(ScaledRenyiLambda{xi, offset});
}

LambdaSpec LambdaSpec::custom(std::function<double(const Dist&, const Dist&)> fn, std::string name) {
  if (!fn) throw std::invalid_argument("custom lambda needs a callable");
  return LambdaSpec(CustomLambda{std::move(fn), std::move(name)});
}

bool LambdaSpec::certifies_infinite_kappa() const {
  const auto* s = std::get_if<ScaledRenyiLambda>(&v_);
  return s && s->xi <= 1.0 && s->offset == 0.0;
}

std::string LambdaSpec::describe() const {
  std::ostringstream o;
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ConstantLambda>) o << "constant(" << l.lambda0 << ")";
        else if constexpr (std::is_same_v<T, ScaledRenyiLambda>) o << "scaled_renyi(xi=" << l.xi << ",offset=" << l.offset << ")";
        else o << l.name;
      },
      v_);
  return o.str();
}

double lambda_eval(const LambdaSpec& spec, const Dist& P0p, const Dist& P1p, double beta) {
  return std::visit(
      [&](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ConstantLambda>) return l.lambda0;
        else if constexpr (std::is_same_v<T, ScaledRenyiLambda>)
          return l.xi * (renyi_frac_value(P1p.probs(), P0p.probs(), beta) + l.offset);
        else return l.fn(P0p, P1p);
      },
      spec.variant());
}

void ProblemInstance::validate() const {
  if (P0.size() != P1.size()) throw std::invalid_argument("P0 and P1 must have the same alphabet");
  if (P0 == P1) throw std::invalid_argument("distinct distributions required (P0 == P1)");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  eps.check_alphabet(dim());
  if (!eps.admits(P0)) throw std::invalid_argument("P0 violates the epsilon floor");
  if (!eps.admits(P1)) throw std::invalid_argument("P1 violates the epsilon floor");
}

std::string to_string(KappaStatus s) {
  switch (s) {
    case KappaStatus::Finite: return "finite";
    case KappaStatus::InfiniteCertified: return "inf (certified)";
    case KappaStatus::InfiniteResolutionLimited: return "inf (resolution-limited)";
  }
  return "?";
}

SearchConfig solver_config(const ProblemInstance& inst) { return SearchConfig::defaults(inst.dim(), inst.eps); }

namespace {

SearchConfig with_eps(SearchConfig cfg, std::optional<EpsilonFloor> eps) {
  cfg.eps = eps;
  return cfg;
}

double xlogx_sum(const Dist& R) {
  double s = 0.0;
  for (double v : R.probs())
    if (v > 0.0) s += v * std::log(v);
  return s;
}

struct Term {
  double c;
  const Dist* R;
};

// min over P in P_eps of sum_i c_i KL(R_i||P), nats.
double floor_block_nats(std::initializer_list<Term> terms, double eps) {
  std::size_t d = 0;
  double csum = 0.0;
  for (const Term& t : terms) {
    d = t.R->size();
    csum += t.c;
  }
  if (csum <= 0.0) return 0.0;
  std::vector<double> w(d, 0.0);
  double neg_entropy = 0.0;
  for (const Term& t : terms) {
    if (t.c <= 0.0) continue;
    for (std::size_t x = 0; x < d; ++x) w[x] += t.c * (*t.R)[x];
    neg_entropy += t.c * xlogx_sum(*t.R);
  }
  const Dist P = floor_cross_entropy_argmin(w, eps);
  double cross = 0.0;
  for (std::size_t x = 0; x < d; ++x)
    if (w[x] > 0.0) cross += w[x] * std::log(P[x]);
  return std::max(0.0, neg_entropy - cross);
}

// One block of the ball program: a KL(R||A) in the objective, sum_k b_k KL(R||B_k) in the constraint.
struct Block {
  double a = 0.0;
  Dist::Storage lnA;
  int nb = 0;
  double b[2] = {0.0, 0.0};
  Dist::Storage lnB[2];
};

Dist::Storage logs(const Dist& p) {
  Dist::Storage out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = std::log(p[i]);
  return out;
}

struct BallEval {
  double dual_part;  // sum over blocks of -W log Z
  double cons;       // constraint at the minimizer
  double obj;        // objective at the minimizer
};

class BallProgram {
 public:
  explicit BallProgram(std::size_t d) : d_(d) {}
  void add(double a, const Dist& A, std::initializer_list<std::pair<double, const Dist*>> cons) {
    Block bl;
    bl.a = a;
    bl.lnA = logs(A);
    for (const auto& [bk, Bk] : cons) {
      bl.b[bl.nb] = bk;
      bl.lnB[bl.nb] = logs(*Bk);
      ++bl.nb;
    }
    blocks_[n_++] = std::move(bl);
  }

  // obj_scale = 0 gives the constraint-only program (t -> infinity limit).
  BallEval eval(double t, double obj_scale = 1.0) const {
    BallEval r{0.0, 0.0, 0.0};
    double e[64];
    for (int j = 0; j < n_; ++j) {
      const Block& bl = blocks_[j];
      const double a = bl.a * obj_scale;
      double bsum = 0.0;
      for (int k = 0; k < bl.nb; ++k) bsum += bl.b[k];
      const double W = a + t * bsum;
      double mx = -kInf;
      for (std::size_t x = 0; x < d_; ++x) {
        double s = a * bl.lnA[x];
        for (int k = 0; k < bl.nb; ++k) s += t * bl.b[k] * bl.lnB[k][x];
        e[x] = s / W;
        mx = std::max(mx, e[x]);
      }
      double z = 0.0;
      for (std::size_t x = 0; x < d_; ++x) z += std::exp(e[x] - mx);
      const double logZ = mx + std::log(z);
      r.dual_part += -W * logZ;
      for (std::size_t x = 0; x < d_; ++x) {
        const double lnR = e[x] - logZ;
        const double R = std::exp(lnR);
        for (int k = 0; k < bl.nb; ++k) r.cons += bl.b[k] * R * (lnR - bl.lnB[k][x]);
        r.obj += bl.a * R * (lnR - bl.lnA[x]);
      }
    }
    r.cons = std::max(0.0, r.cons);
    r.obj = std::max(0.0, r.obj);
    return r;
  }

  // Minimum over the open ball {constraint < r}; r and the result in nats.
  double solve(double r, double cutoff, double* t_hint) const {
    const BallEval lim = eval(1.0, 0.0);
    // a centre on the diagonal with lambda = 0 gives an empty ball; keep rounding from opening it
    if (!(lim.dual_part < r - 1e-13)) return kInf;
    const BallEval at0 = eval(0.0);
    if (at0.cons <= r) return 0.0;
    auto dual = [&](double t) { return eval(t).dual_part - t * r; };
    double t0 = (t_hint && *t_hint > 0.0) ? *t_hint : 1.0;
    if (std::isfinite(cutoff) && t_hint && *t_hint > 0.0) {
      const double h = dual(t0);
      if (h >= cutoff) return h;
    }
    double lo = 0.0, hi = t0;
    if (eval(t0).cons > r) {
      lo = t0;
      hi = 2.0 * t0;
      int guard = 0;
      while (eval(hi).cons > r && guard++ < 200) {
        lo = hi;
        hi *= 2.0;
      }
    } else {
      for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * hi;
        if (eval(m).cons <= r) hi = m;
        else {
          lo = m;
          break;
        }
      }
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (eval(mid).cons > r) lo = mid;
      else hi = mid;
      if (hi - lo <= 1e-13 * hi) break;
    }
    if (t_hint) *t_hint = hi;
    return eval(hi).obj;
  }

 private:
  std::size_t d_;
  int n_ = 0;
  Block blocks_[3];
};

double to_nats(double bits) { return bits * kLn2; }
double to_bits(double nats) { return nats / kLn2; }

double generic_tuple_gap(const Dist& Q, const Dist& Q0, const Dist& Q1, BlockWeights w, int theta,
                         bool subtract_lambda, const ProblemInstance& inst, const SearchConfig& cfg) {
  auto obj = [&](const Dist& A, const Dist& B) {
    const Dist& Pt = theta == 0 ? A : B;
    double v = 0.0;
    if (w.x > 0) v += w.x * kl(Q, Pt);
    if (w.t0 > 0) v += w.t0 * kl(Q0, A);
    if (w.t1 > 0) v += w.t1 * kl(Q1, B);
    if (subtract_lambda) v -= inst.lambda_at(A, B);
    return v;
  };
  return min_simplex_pair(obj, {}, inst.dim(), with_eps(cfg, inst.eps)).value;
}

template <class BallFn>
double center_search(const ProblemInstance& inst, const SearchConfig& cfg, BallFn ball) {
  double t_hint = 0.0;
  auto obj = [&](const Dist& A, const Dist& B, double cutoff) { return ball(A, B, cutoff, &t_hint); };
  return min_simplex_pair_bounded(obj, {}, inst.dim(), with_eps(cfg, inst.eps)).value;
}

}  // namespace

Dist floor_cross_entropy_argmin(std::span<const double> w, double eps) {
  const std::size_t d = w.size();
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  double total = 0.0;
  for (double v : w) total += v;
  if (!(total > 0.0)) throw std::invalid_argument("weights must have a positive sum");
  // Clamp the k smallest weights to eps, spread the rest proportionally.
  double free_w = total;
  std::vector<double> p(d, eps);
  for (std::size_t k = 0; k < d; ++k) {
    const double free_mass = 1.0 - static_cast<double>(k) * eps;
    const double scale = free_mass / free_w;
    if (w[idx[k]] * scale >= eps) {
      for (std::size_t j = k; j < d; ++j) p[idx[j]] = w[idx[j]] * scale;
      break;
    }
    free_w -= w[idx[k]];
  }
  return Dist(p);
}

double kl_to_floor(const Dist& Q, const EpsilonFloor& eps) {
  return to_bits(floor_block_nats({{1.0, &Q}}, eps.value()));
}

double tuple_gap(const Dist& Q, const Dist& Q0, const Dist& Q1, BlockWeights w, int theta, bool subtract_lambda,
                 const ProblemInstance& inst, const SearchConfig& cfg) {
  if (theta != 0 && theta != 1) throw std::invalid_argument("theta must be 0 or 1");
  if (subtract_lambda && !inst.lambda.is_constant())
    return generic_tuple_gap(Q, Q0, Q1, w, theta, subtract_lambda, inst, cfg);
  const double e = inst.eps.value();
  double nats;
  if (theta == 0) nats = floor_block_nats({{w.x, &Q}, {w.t0, &Q0}}, e) + floor_block_nats({{w.t1, &Q1}}, e);
  else nats = floor_block_nats({{w.t0, &Q0}}, e) + floor_block_nats({{w.x, &Q}, {w.t1, &Q1}}, e);
  double v = to_bits(nats);
  if (subtract_lambda) v -= inst.lambda.as_constant().lambda0;
  return v;
}

double g1(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg) {
  return tuple_gap(Q, Q0, Q1, {1.0, inst.alpha, inst.beta}, 0, true, inst, cfg);
}

double g1(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst) {
  return g1(Q, Q0, Q1, inst, solver_config(inst));
}

double mu_inner(const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg) {
  if (inst.lambda.is_constant()) return inst.beta * kl_to_floor(Q1, inst.eps) - inst.lambda.as_constant().lambda0;
  auto obj = [&](const Dist& P) { return inst.beta * kl(Q1, P) - inst.lambda_at(inst.P1, P); };
  return min_simplex(obj, {}, inst.dim(), with_eps(cfg, inst.eps)).value;
}

double g_mu(const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg) {
  return inst.alpha * kl(Q0, inst.P1) + mu_inner(Q1, inst, cfg);
}

double kappa_ball(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, double cutoff, double* t_hint) {
  BallProgram prog(inst.dim());
  prog.add(inst.alpha, inst.P0, {{inst.alpha, &P0c}});
  prog.add(1.0 + inst.beta, inst.P1, {{1.0, &P0c}, {inst.beta, &P1c}});
  const double r = to_nats(inst.lambda_at(P0c, P1c));
  return to_bits(prog.solve(r, to_nats(cutoff), t_hint));
}

double e_fix_ball(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, double cutoff, double* t_hint) {
  BallProgram prog(inst.dim());
  prog.add(1.0, inst.P1, {{1.0, &P0c}});
  prog.add(inst.alpha, inst.P0, {{inst.alpha, &P0c}});
  prog.add(inst.beta, inst.P1, {{inst.beta, &P1c}});
  const double r = to_nats(inst.lambda_at(P0c, P1c));
  return to_bits(prog.solve(r, to_nats(cutoff), t_hint));
}

double renyi_term(const ProblemInstance& inst) { return renyi_frac(inst.P0, inst.P1, inst.alpha).value; }

KappaResult kappa_detailed(const ProblemInstance& inst, const SearchConfig& cfg) {
  if (inst.lambda.certifies_infinite_kappa()) return {kInf, KappaStatus::InfiniteCertified};
  const double v = center_search(inst, cfg, [&](const Dist& A, const Dist& B, double cut, double* th) {
    return kappa_ball(inst, A, B, cut, th);
  });
  if (std::isinf(v)) return {kInf, KappaStatus::InfiniteResolutionLimited};
  return {v, KappaStatus::Finite};
}

double kappa(const ProblemInstance& inst, const SearchConfig& cfg) { return kappa_detailed(inst, cfg).value; }
double kappa(const ProblemInstance& inst) { return kappa(inst, solver_config(inst)); }

double mu(const ProblemInstance& inst, const SearchConfig& cfg) {
  std::map<std::vector<double>, double> inner_cache;
  auto inner = [&](const Dist& Q1) {
    auto key = Q1.to_vector();
    auto it = inner_cache.find(key);
    if (it != inner_cache.end()) return it->second;
    const double v = mu_inner(Q1, inst, cfg);
    inner_cache.emplace(std::move(key), v);
    return v;
  };
  auto obj = [&](const Dist& Q0, const Dist& Q1) { return inst.alpha * kl(Q0, inst.P0) + inst.beta * kl(Q1, inst.P1); };
  auto cons = [&](const Dist& Q0, const Dist& Q1) { return inst.alpha * kl(Q0, inst.P1) + inner(Q1) < 0.0; };
  return min_simplex_pair(obj, cons, inst.dim(), with_eps(cfg, std::nullopt)).value;
}

double mu(const ProblemInstance& inst) { return mu(inst, solver_config(inst)); }

double nu(const ProblemInstance& inst) {
  const double lam = inst.lambda_true();
  if (lam >= kl(inst.P1, inst.P0)) return 0.0;
  if (!(lam > 0.0)) return kl(inst.P0, inst.P1);
  return bht_tradeoff(inst.P0, inst.P1, lam);
}

double e_fix(const ProblemInstance& inst, const SearchConfig& cfg) {
  return center_search(inst, cfg, [&](const Dist& A, const Dist& B, double cut, double* th) {
    return e_fix_ball(inst, A, B, cut, th);
  });
}

double e_fix(const ProblemInstance& inst) { return e_fix(inst, solver_config(inst)); }

double kappa_constant_gjs_form(const ProblemInstance& inst, const SearchConfig& cfg) {
  if (!inst.lambda.is_constant()) throw std::invalid_argument("GJS form needs a constant lambda");
  const double l0 = inst.lambda.as_constant().lambda0;
  auto obj = [&](const Dist& Q0, const Dist& Q1) {
    return (1.0 + inst.beta) * kl(Q1, inst.P1) + inst.alpha * kl(Q0, inst.P0);
  };
  auto cons = [&](const Dist& Q0, const Dist& Q1) { return gjs_value(Q0.probs(), Q1.probs(), inst.alpha) <= l0; };
  return min_simplex_pair(obj, cons, inst.dim(), with_eps(cfg, inst.eps)).value;
}

double e_fix_constant_gjs_form(const ProblemInstance& inst, const SearchConfig& cfg) {
  if (!inst.lambda.is_constant()) throw std::invalid_argument("GJS form needs a constant lambda");
  const double l0 = inst.lambda.as_constant().lambda0;
  auto obj = [&](const Dist& Q, const Dist& Q0) { return kl(Q, inst.P1) + inst.alpha * kl(Q0, inst.P0); };
  auto cons = [&](const Dist& Q, const Dist& Q0) { return gjs_value(Q0.probs(), Q.probs(), inst.alpha) <= l0; };
  return min_simplex_pair(obj, cons, inst.dim(), with_eps(cfg, inst.eps)).value;
}

void assemble(ExponentReport& r) {
  r.e_seq = std::min(r.renyi_term, r.kappa);
  r.e_semi1 = std::min(r.e_seq, r.mu);
  r.e_semi2 = std::min(r.e_seq, r.nu);
}

ExponentReport report(const ProblemInstance& inst, const SearchConfig& cfg) {
  inst.validate();
  ExponentReport r;
  r.renyi_term = renyi_term(inst);
  const KappaResult k = kappa_detailed(inst, cfg);
  r.kappa = k.value;
  r.kappa_status = k.status;
  r.mu = mu(inst, cfg);
  r.nu = nu(inst);
  r.e_fix = e_fix(inst, cfg);
  assemble(r);
  return r;
}

ExponentReport report(const ProblemInstance& inst) { return report(inst, solver_config(inst)); }

}  // namespace seqclass
