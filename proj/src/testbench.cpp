#include "seqclass/testbench.hpp"

#include <cmath>
#include <stdexcept>

namespace seqclass {

std::string to_string(SetupKind s) {
  switch (s) {
    case SetupKind::FixedLength: return "fixed_length";
    case SetupKind::Semi1: return "semi1";
    case SetupKind::Semi2: return "semi2";
    case SetupKind::FullySeq: return "fully_seq";
  }
  return "?";
}

SetupKind setup_from_string(const std::string& s) {
  if (s == "fixed_length" || s == "fixed") return SetupKind::FixedLength;
  if (s == "semi1") return SetupKind::Semi1;
  if (s == "semi2") return SetupKind::Semi2;
  if (s == "fully_seq" || s == "seq") return SetupKind::FullySeq;
  throw std::invalid_argument("unknown setup '" + s + "'");
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::Early: return "early";
    case Phase::Late: return "late";
    case Phase::Fixed: return "fixed";
  }
  return "?";
}

long ceil_count(double a, long k) {
  const double v = a * static_cast<double>(k);
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return static_cast<long>(r);
  return static_cast<long>(std::ceil(v));
}

double eta_n(long n, double alpha, double beta, int d) {
  if (n < 2) throw std::invalid_argument("eta_n needs n >= 2");
  const double dd = d;
  const double num = (dd + 2.0) * std::log2(static_cast<double>(n)) +
                     dd * std::log2(static_cast<double>(ceil_count(alpha, n)) + 1.0) +
                     dd * std::log2(static_cast<double>(ceil_count(beta, n)) + 1.0);
  return num / static_cast<double>(n - 1);
}

double eta_n_generic(long n, std::span<const double> alphas, std::span<const int> alphabet_sizes) {
  if (n < 2) throw std::invalid_argument("eta_n needs n >= 2");
  if (alphas.size() != alphabet_sizes.size()) throw std::invalid_argument("alphas / alphabet sizes mismatch");
  double num = 2.0 * std::log2(static_cast<double>(n));
  for (std::size_t i = 0; i < alphas.size(); ++i)
    num += alphabet_sizes[i] * std::log2(static_cast<double>(ceil_count(alphas[i], n)) + 1.0);
  return num / static_cast<double>(n - 1);
}

LambdaSets classification_gjs_lambda_sets(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, double alpha,
                                          double beta, double eta) {
  return {gjs_value(P0hat.probs(), Phat.probs(), alpha) < eta, gjs_value(P1hat.probs(), Phat.probs(), beta) < eta};
}

double HypothesisModel::eta(long n) const {
  const auto a = alphas();
  const auto s = alphabet_sizes();
  return eta_n_generic(n, a, s);
}

TestOutcome two_phase_test(std::span<const SampleSource* const> streams, long n, const HypothesisModel& model,
                           std::span<const double> alphas, int ell, const EngineOptions& opts) {
  const std::size_t s = streams.size();
  if (n < 2) throw std::invalid_argument("two_phase_test needs n >= 2");
  if (alphas.size() != s || model.num_sequences() != s) throw std::invalid_argument("sequence count mismatch");
  if (ell < 0 || ell > static_cast<int>(s)) throw std::invalid_argument("ell out of range");
  const auto sizes = model.alphabet_sizes();

  std::vector<std::vector<long>> counts(s);
  std::vector<std::uint64_t> drawn(s, 0);
  auto extend = [&](std::size_t i, long target) {
    if (static_cast<std::uint64_t>(target) > streams[i]->available())
      throw std::out_of_range("sample stream exhausted");
    for (auto j = drawn[i]; j < static_cast<std::uint64_t>(target); ++j) {
      const int x = streams[i]->at(j);
      if (x < 0 || x >= sizes[i]) throw std::out_of_range("sample outside alphabet");
      ++counts[i][static_cast<std::size_t>(x)];
    }
    drawn[i] = std::max<std::uint64_t>(drawn[i], static_cast<std::uint64_t>(target));
  };
  auto tuple = [&]() {
    std::vector<Dist> q;
    q.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<double> v(counts[i].size());
      for (std::size_t x = 0; x < v.size(); ++x) v[x] = static_cast<double>(counts[i][x]) / static_cast<double>(drawn[i]);
      q.push_back(Dist(v));
    }
    return q;
  };

  for (std::size_t i = 0; i < s; ++i) {
    counts[i].assign(static_cast<std::size_t>(sizes[i]), 0);
    const bool fixed = static_cast<int>(i) < ell;
    extend(i, std::max(1L, ceil_count(alphas[i], fixed ? n : n - 1)));
  }

  TestOutcome out;
  const std::vector<Dist> q = tuple();
  const double eta = model.eta(n);
  if (model.dist_to_H0(q) < eta) {
    out = {0, n - 1, Phase::Early, false};
    return out;
  }
  if (model.dist_to_H1(q) < eta) {
    // tie at g1 == 0 decides 1
    out = {model.g1_at(q) < 0.0 ? 0 : 1, n - 1, Phase::Early, false};
    return out;
  }

  const long k = n * n;
  bool capped = false;
  for (std::size_t i = static_cast<std::size_t>(ell); i < s; ++i) {
    long target = ceil_count(alphas[i], k);
    if (opts.late_phase_cap > 0 && target > opts.late_phase_cap) {
      target = opts.late_phase_cap;
      capped = true;
    }
    extend(i, target);
  }
  const std::vector<Dist> q2 = tuple();
  out = {model.gn_at(q2, n) < 0.0 ? 0 : 1, k, Phase::Late, capped};
  return out;
}

int fixed_length_test(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, const ProblemInstance& inst,
                      const SearchConfig& cfg) {
  return g1(Phat, P0hat, P1hat, inst, cfg) < 0.0 ? 0 : 1;
}

int fixed_length_test(const Dist& Phat, const Dist& P0hat, const Dist& P1hat, const ProblemInstance& inst) {
  return fixed_length_test(Phat, P0hat, P1hat, inst, solver_config(inst));
}

ClassificationModel::ClassificationModel(SetupKind setup, ProblemInstance inst, SearchConfig cfg)
    : setup_(setup), inst_(std::move(inst)), cfg_(std::move(cfg)) {
  switch (setup) {
    case SetupKind::Semi1:
      order_ = {1, 2, 0};
      ell_ = 2;
      break;
    case SetupKind::Semi2:
      order_ = {0, 1, 2};
      ell_ = 1;
      break;
    case SetupKind::FullySeq:
      order_ = {0, 1, 2};
      ell_ = 0;
      break;
    case SetupKind::FixedLength:
      order_ = {0, 1, 2};
      ell_ = 3;
      break;
  }
}

std::vector<double> ClassificationModel::alphas() const {
  const double role_alpha[3] = {1.0, inst_.alpha, inst_.beta};
  std::vector<double> a;
  for (int r : order_) a.push_back(role_alpha[r]);
  return a;
}

std::vector<int> ClassificationModel::alphabet_sizes() const {
  return std::vector<int>(3, static_cast<int>(inst_.dim()));
}

ClassificationModel::Roles ClassificationModel::roles(std::span<const Dist> q) const {
  if (q.size() != 3) throw std::invalid_argument("classification tuples have three entries");
  const Dist* by_role[3];
  for (std::size_t i = 0; i < 3; ++i) by_role[order_[i]] = &q[i];
  return {*by_role[0], *by_role[1], *by_role[2]};
}

double ClassificationModel::dist_to_H0(std::span<const Dist> q) const {
  const Roles r = roles(q);
  return gjs_value(r.t0.probs(), r.x.probs(), inst_.alpha);
}

double ClassificationModel::dist_to_H1(std::span<const Dist> q) const {
  const Roles r = roles(q);
  return gjs_value(r.t1.probs(), r.x.probs(), inst_.beta);
}

double ClassificationModel::g1_at(std::span<const Dist> q) const {
  const Roles r = roles(q);
  return g1(r.x, r.t0, r.t1, inst_, cfg_);
}

double ClassificationModel::gn_at(std::span<const Dist> q, long n) const {
  const Roles r = roles(q);
  const double nn = static_cast<double>(n);
  double w[3] = {1.0, inst_.alpha, inst_.beta};
  for (std::size_t i = 0; i < 3; ++i)
    if (static_cast<int>(i) >= ell_) w[order_[i]] *= nn;
  return tuple_gap(r.x, r.t0, r.t1, {w[0], w[1], w[2]}, 0, true, inst_, cfg_);
}

std::unique_ptr<ClassificationModel> make_model(SetupKind setup, const ProblemInstance& inst,
                                                const SearchConfig& cfg, bool oracle_mode) {
  inst.validate();
  if (inst.lambda.is_custom() && !oracle_mode)
    throw std::invalid_argument("custom lambda families are only supported in oracle mode");
  return std::make_unique<ClassificationModel>(setup, inst, cfg);
}

std::unique_ptr<ClassificationModel> make_model(SetupKind setup, const ProblemInstance& inst, bool oracle_mode) {
  return make_model(setup, inst, solver_config(inst), oracle_mode);
}

}  // namespace seqclass
