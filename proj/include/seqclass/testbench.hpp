#pragma once

#include "seqclass/exponents.hpp"
#include "seqclass/simplex.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace seqclass {

enum class SetupKind { FixedLength, Semi1, Semi2, FullySeq };
std::string to_string(SetupKind s);
SetupKind setup_from_string(const std::string& s);

enum class Phase { Early, Late, Fixed };
std::string to_string(Phase p);

struct TestOutcome {
  int decision = 1;
  long tau = 0;
  Phase phase = Phase::Early;
  bool capped = false;
};

// [(d+2) log n + d log(ceil(alpha n)+1) + d log(ceil(beta n)+1)] / (n-1), bits.
double eta_n(long n, double alpha, double beta, int d);
// [2 log n + sum_i |X_i| log(ceil(alpha_i n)+1)] / (n-1), bits.
double eta_n_generic(long n, std::span<const double> alphas, std::span<const int> alphabet_sizes);

// ceil(a*k) that is not fooled by a*k landing one ulp above an integer.
long ceil_count(double a, long k);

struct LambdaSets {
  bool in_lambda0;
  bool in_lambda1;
};
LambdaSets classification_gjs_lambda_sets(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, double alpha,
                                          double beta, double eta);

// Composite-hypothesis view of an s-sequence problem. Tuples are in the model's own order.
class HypothesisModel {
 public:
  virtual ~HypothesisModel() = default;
  virtual std::size_t num_sequences() const = 0;
  virtual int ell() const = 0;
  virtual std::vector<double> alphas() const = 0;
  virtual std::vector<int> alphabet_sizes() const = 0;
  virtual double dist_to_H0(std::span<const Dist> q) const = 0;
  virtual double dist_to_H1(std::span<const Dist> q) const = 0;
  virtual double g1_at(std::span<const Dist> q) const = 0;
  virtual double gn_at(std::span<const Dist> q, long n) const = 0;
  virtual double eta(long n) const;
};

class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual int at(std::uint64_t index) const = 0;
  virtual std::uint64_t available() const = 0;
};

class IidSource final : public SampleSource {
 public:
  IidSource(Dist p, std::uint64_t seed, std::uint64_t stream, std::uint64_t limit = UINT64_MAX)
      : p_(std::move(p)), rng_(seed, stream), limit_(limit) {}
  int at(std::uint64_t index) const override { return draw_symbol(p_, rng_.uniform(index)); }
  std::uint64_t available() const override { return limit_; }

 private:
  Dist p_;
  CounterRng rng_;
  std::uint64_t limit_;
};

class FixedSource final : public SampleSource {
 public:
  explicit FixedSource(std::vector<int> samples) : s_(std::move(samples)) {}
  int at(std::uint64_t index) const override { return s_.at(index); }
  std::uint64_t available() const override { return s_.size(); }

 private:
  std::vector<int> s_;
};

struct EngineOptions {
  long late_phase_cap = 0;  // per-sequence sample cap in the late phase, 0 = none
};

TestOutcome two_phase_test(std::span<const SampleSource* const> streams, long n, const HypothesisModel& model,
                           std::span<const double> alphas, int ell, const EngineOptions& opts = {});

int fixed_length_test(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, const ProblemInstance& inst);
int fixed_length_test(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, const ProblemInstance& inst,
                      const SearchConfig& cfg);

// Classification instantiation. order() lists the roles (0 = X, 1 = T0, 2 = T1) in sequence order.
class ClassificationModel final : public HypothesisModel {
 public:
  ClassificationModel(SetupKind setup, ProblemInstance inst, SearchConfig cfg);

  std::size_t num_sequences() const override { return 3; }
  int ell() const override { return ell_; }
  std::vector<double> alphas() const override;
  std::vector<int> alphabet_sizes() const override;
  double dist_to_H0(std::span<const Dist> q) const override;
  double dist_to_H1(std::span<const Dist> q) const override;
  double g1_at(std::span<const Dist> q) const override;
  double gn_at(std::span<const Dist> q, long n) const override;

  SetupKind setup() const { return setup_; }
  const ProblemInstance& instance() const { return inst_; }
  const std::vector<int>& order() const { return order_; }

 private:
  struct Roles {
    const Dist& x;
    const Dist& t0;
    const Dist& t1;
  };
  Roles roles(std::span<const Dist> q) const;

  SetupKind setup_;
  ProblemInstance inst_;
  SearchConfig cfg_;
  std::vector<int> order_;
  int ell_;
};

// oracle_mode admits black-box lambda families.
std::unique_ptr<ClassificationModel> make_model(SetupKind setup, const ProblemInstance& inst,
                                                bool oracle_mode = false);
std::unique_ptr<ClassificationModel> make_model(SetupKind setup, const ProblemInstance& inst,
                                                const SearchConfig& cfg, bool oracle_mode = false);

}  // namespace seqclass
