#pragma once

#include "seqclass/divergence.hpp"
#include "seqclass/optimizer.hpp"
#include "seqclass/simplex.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace seqclass {

struct ConstantLambda {
  double lambda0;
};

// xi * (D_{beta/(1+beta)}(P1'||P0') + offset)
struct ScaledRenyiLambda {
  double xi;
  double offset;
};

// Black-box threshold, accepted by the generic routes only. Must be continuous on the
// closed set of floored pairs (its value on the diagonal is used as-is).
struct CustomLambda {
  std::function<double(const Dist&, const Dist&)> fn;
  std::string name;
};

class LambdaSpec {
 public:
  using Variant = std::variant<ConstantLambda, ScaledRenyiLambda, CustomLambda>;

  static LambdaSpec constant(double lambda0);
  static LambdaSpec scaled_renyi(double xi, double offset = 0.0);
  static LambdaSpec custom(std::function<double(const Dist&, const Dist&)> fn, std::string name = "custom");

  const Variant& variant() const { return v_; }
  bool is_constant() const { return std::holds_alternative<ConstantLambda>(v_); }
  bool is_scaled_renyi() const { return std::holds_alternative<ScaledRenyiLambda>(v_); }
  bool is_custom() const { return std::holds_alternative<CustomLambda>(v_); }
  const ConstantLambda& as_constant() const { return std::get<ConstantLambda>(v_); }
  const ScaledRenyiLambda& as_scaled_renyi() const { return std::get<ScaledRenyiLambda>(v_); }

  // lambda <= Renyi pointwise, which makes the kappa feasible set empty.
  bool certifies_infinite_kappa() const;
  std::string describe() const;

 private:
  explicit LambdaSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

double lambda_eval(const LambdaSpec& spec, const Dist& P0p, const Dist& P1p, double beta);

struct ProblemInstance {
  Dist P0;
  Dist P1;
  double alpha;
  double beta;
  EpsilonFloor eps;
  LambdaSpec lambda;

  std::size_t dim() const { return P0.size(); }
  // Throws std::invalid_argument naming the violated requirement.
  void validate() const;
  double lambda_at(const Dist& P0p, const Dist& P1p) const { return lambda_eval(lambda, P0p, P1p, beta); }
  double lambda_true() const { return lambda_at(P0, P1); }
};

enum class KappaStatus { Finite, InfiniteCertified, InfiniteResolutionLimited };
std::string to_string(KappaStatus s);

struct ExponentReport {
  double renyi_term = 0;
  double kappa = kInf;
  double mu = kInf;
  double nu = 0;
  double e_fix = 0;
  double e_seq = 0;
  double e_semi1 = 0;
  double e_semi2 = 0;
  KappaStatus kappa_status = KappaStatus::Finite;
};

// Coefficients on KL(Q||P_theta'), KL(Q0||P0'), KL(Q1||P1').
struct BlockWeights {
  double x;
  double t0;
  double t1;
};

SearchConfig solver_config(const ProblemInstance& inst);

// inf over (P0',P1') in P_eps^2 of w.x KL(Q||P_theta') + w.t0 KL(Q0||P0') + w.t1 KL(Q1||P1')
// minus lambda(P0',P1') when subtract_lambda. Exact for constant lambda.
double tuple_gap(const Dist& Q, const Dist& Q0, const Dist& Q1, BlockWeights w, int theta, bool subtract_lambda,
                 const ProblemInstance& inst, const SearchConfig& cfg);

double g1(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst);
double g1(const Dist& Q, const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg);

// inf over P1' in P_eps of beta KL(Q1||P1') - lambda(P1, P1').
double mu_inner(const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg);
// alpha KL(Q0||P1) + mu_inner(Q1).
double g_mu(const Dist& Q0, const Dist& Q1, const ProblemInstance& inst, const SearchConfig& cfg);

// min over P in P_eps of sum_x w_x (-ln P(x)); w >= 0 with positive sum.
Dist floor_cross_entropy_argmin(std::span<const double> w, double eps);
// min over P in P_eps of KL(Q||P), bits.
double kl_to_floor(const Dist& Q, const EpsilonFloor& eps);

// Value (bits) of the kappa / e_fix program restricted to the lambda-ball of one centre
// (P0',P1'); +inf when that ball is empty. `t_hint` carries the last optimal multiplier
// between calls and `cutoff` allows an early exit with a dual lower bound >= cutoff.
double kappa_ball(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, double cutoff = kInf,
                  double* t_hint = nullptr);
double e_fix_ball(const ProblemInstance& inst, const Dist& P0c, const Dist& P1c, double cutoff = kInf,
                  double* t_hint = nullptr);

struct KappaResult {
  double value;
  KappaStatus status;
};

double renyi_term(const ProblemInstance& inst);
KappaResult kappa_detailed(const ProblemInstance& inst, const SearchConfig& cfg);
double kappa(const ProblemInstance& inst);
double kappa(const ProblemInstance& inst, const SearchConfig& cfg);
double mu(const ProblemInstance& inst);
double mu(const ProblemInstance& inst, const SearchConfig& cfg);
double nu(const ProblemInstance& inst);
double e_fix(const ProblemInstance& inst);
double e_fix(const ProblemInstance& inst, const SearchConfig& cfg);

// Constant-lambda forms in terms of GJS constraints, searched directly over (Q0,Q1) or (Q,Q0).
double kappa_constant_gjs_form(const ProblemInstance& inst, const SearchConfig& cfg);
double e_fix_constant_gjs_form(const ProblemInstance& inst, const SearchConfig& cfg);

ExponentReport report(const ProblemInstance& inst);
ExponentReport report(const ProblemInstance& inst, const SearchConfig& cfg);
// Fills the three minima from the five terms.
void assemble(ExponentReport& r);

}  // namespace seqclass
