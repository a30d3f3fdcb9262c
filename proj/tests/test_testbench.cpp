#include "doctest.h"
#include "seqclass/reference.hpp"
#include "seqclass/testbench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace seqclass;

namespace {

const Dist kP0{0.6, 0.4};
const Dist kP1{0.1, 0.9};

ProblemInstance constant_inst(double l0 = 0.05, double a = 1.0, double b = 1.0) {
  return {kP0, kP1, a, b, EpsilonFloor(0.01), LambdaSpec::constant(l0)};
}

// Empirical distribution with denominator k, entries >= floor.
Dist random_type(CounterRng& rng, std::uint64_t i, int k, int floor_count = 0) {
  const int free = k - 2 * floor_count;
  const int c = floor_count + static_cast<int>(rng.uniform(i) * (free + 1)) % (free + 1);
  return Dist{static_cast<double>(c) / k, static_cast<double>(k - c) / k};
}

std::vector<int> pattern(long len, long ones_per_ten) {
  std::vector<int> s(static_cast<std::size_t>(len));
  for (long i = 0; i < len; ++i) s[static_cast<std::size_t>(i)] = (i % 10) < ones_per_ten ? 1 : 0;
  return s;
}

}  // namespace

TEST_CASE("eta_n") {
  const double direct = (4 * std::log2(100.0) + 2 * std::log2(101.0) + 2 * std::log2(101.0)) / 99.0;
  CHECK(eta_n(100, 1.0, 1.0, 2) == doctest::Approx(direct).epsilon(1e-15));
  CHECK(eta_n(1000, 1.0, 1.0, 2) < eta_n(100, 1.0, 1.0, 2));
  CHECK(eta_n(10000, 1.0, 1.0, 2) < eta_n(1000, 1.0, 1.0, 2));
  CHECK_THROWS(eta_n(1, 1.0, 1.0, 2));
  // generic form with alpha_3 = 1 differs only by d log((n+1)/n) in the numerator
  for (long n : {10L, 100L, 1000L}) {
    const double a[] = {1.0, 0.7, 1.3};
    const int s[] = {3, 3, 3};
    const double gap = eta_n_generic(n, a, s) - eta_n(n, 0.7, 1.3, 3);
    CHECK(gap >= 0.0);
    CHECK(gap <= 3 * std::log2(1.0 + 1.0 / n) / (n - 1) + 1e-15);
  }
}

TEST_CASE("ceil conventions") {
  CHECK(ceil_count(0.7, 10) == 7);
  CHECK(ceil_count(0.38, 50) == 19);
  CHECK(ceil_count(0.38, 51) == 20);
  CHECK(ceil_count(1.0, 37) == 37);
  CHECK(ceil_count(2.0, 3) == 6);
}

TEST_CASE("gjs lambda sets") {
  const Dist a{0.3, 0.7}, b{0.8, 0.2};
  CHECK(classification_gjs_lambda_sets(a, a, b, 1.0, 1.0, 1e-9).in_lambda0);
  CHECK(classification_gjs_lambda_sets(b, a, b, 1.0, 1.0, 1e-9).in_lambda1);
  const auto s = classification_gjs_lambda_sets(Dist{0.5, 0.5}, Dist{0.9, 0.1}, Dist{0.1, 0.9}, 1.0, 1.0, 0.01);
  CHECK_FALSE(s.in_lambda0);
  CHECK_FALSE(s.in_lambda1);
  CHECK(gjs(Dist{0.9, 0.1}, Dist{0.5, 0.5}, 1.0).value > 0.01);
}

TEST_CASE("setup embeddings") {
  const auto inst = constant_inst(0.05, 0.7, 1.3);
  const auto s1 = make_model(SetupKind::Semi1, inst);
  CHECK(s1->ell() == 2);
  CHECK(s1->order() == std::vector<int>{1, 2, 0});
  CHECK(s1->alphas() == std::vector<double>{0.7, 1.3, 1.0});
  const auto s2 = make_model(SetupKind::Semi2, inst);
  CHECK(s2->ell() == 1);
  CHECK(s2->order() == std::vector<int>{0, 1, 2});
  CHECK(make_model(SetupKind::FullySeq, inst)->ell() == 0);

  // role mapping: the same empirical roles give the same distances whatever the order
  const Dist x{0.3, 0.7}, t0{0.55, 0.45}, t1{0.15, 0.85};
  const std::vector<Dist> seq{x, t0, t1}, semi1{t0, t1, x};
  const auto fs = make_model(SetupKind::FullySeq, inst);
  CHECK(fs->dist_to_H0(seq) == s1->dist_to_H0(semi1));
  CHECK(fs->dist_to_H1(seq) == s1->dist_to_H1(semi1));
  CHECK(fs->g1_at(seq) == s1->g1_at(semi1));
  CHECK(fs->dist_to_H0(seq) == doctest::Approx(gjs(t0, x, 0.7).value).epsilon(1e-14));
}

TEST_CASE("gn weights") {
  const auto inst = constant_inst(0.05, 0.7, 1.3);
  const Dist x{0.3, 0.7}, t0{0.55, 0.45}, t1{0.15, 0.85};
  const std::vector<Dist> q{x, t0, t1};
  const auto fs = make_model(SetupKind::FullySeq, inst);
  const SearchConfig cfg = solver_config(inst);
  const long n = 17;
  // fully sequential: every block carries n, so gn = n (g1 + lambda0) - lambda0
  CHECK(fs->gn_at(q, n) == doctest::Approx(n * (fs->g1_at(q) + 0.05) - 0.05).epsilon(1e-12));
  const auto s1 = make_model(SetupKind::Semi1, inst);
  const std::vector<Dist> q1{t0, t1, x};
  CHECK(s1->gn_at(q1, n) == doctest::Approx(tuple_gap(x, t0, t1, {17.0, 0.7, 1.3}, 0, true, inst, cfg)));
  const auto s2 = make_model(SetupKind::Semi2, inst);
  CHECK(s2->gn_at(q, n) == doctest::Approx(tuple_gap(x, t0, t1, {1.0, 0.7 * n, 1.3 * n}, 0, true, inst, cfg)));
}

TEST_CASE("custom lambda needs oracle mode") {
  ProblemInstance inst = constant_inst();
  inst.lambda = LambdaSpec::custom([](const Dist&, const Dist&) { return 0.05; });
  CHECK_THROWS_AS(make_model(SetupKind::FullySeq, inst), std::invalid_argument);
  CHECK_NOTHROW(make_model(SetupKind::FullySeq, inst, true));
}

TEST_CASE("two-phase engine: early stop on an H0 tuple") {
  const auto inst = constant_inst(0.05);
  const auto m = make_model(SetupKind::FullySeq, inst);
  const long n = 30;
  const FixedSource x(pattern(n * n, 4)), t0(pattern(n * n, 4)), t1(pattern(n * n, 9));
  const SampleSource* s[] = {&x, &t0, &t1};
  const auto a = m->alphas();
  const auto o = two_phase_test(s, n, *m, a, m->ell());
  CHECK(o.decision == 0);
  CHECK(o.tau == n - 1);
  CHECK(o.phase == Phase::Early);
}

TEST_CASE("two-phase engine: far from both sets goes late") {
  const auto inst = constant_inst(0.05);
  const auto m = make_model(SetupKind::FullySeq, inst);
  const long n = 20;
  CHECK(m->eta(n) < 2.0);
  const FixedSource x(pattern(n * n, 0)), t0(pattern(n * n, 10)), t1(pattern(n * n, 10));
  const SampleSource* s[] = {&x, &t0, &t1};
  const auto a = m->alphas();
  const auto o = two_phase_test(s, n, *m, a, m->ell());
  CHECK(o.tau == n * n);
  CHECK(o.phase == Phase::Late);
  CHECK_FALSE(o.capped);

  EngineOptions cap;
  cap.late_phase_cap = 100;
  const auto c = two_phase_test(s, n, *m, a, m->ell(), cap);
  CHECK(c.capped);

  const FixedSource short_x(pattern(50, 0));
  const SampleSource* bad[] = {&short_x, &t0, &t1};
  CHECK_THROWS_WITH(two_phase_test(bad, n, *m, a, m->ell()), "sample stream exhausted");
}

TEST_CASE("early decision is total on the union of the lambda sets") {
  const auto inst = constant_inst(0.05, 1.0, 1.0);
  const long n = 40;
  for (SetupKind setup : {SetupKind::FullySeq, SetupKind::Semi1, SetupKind::Semi2}) {
    const auto m = make_model(setup, inst);
    const auto a = m->alphas();
    long early = 0, late = 0;
    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
      CounterRng pick(trial, 5);
      // role distributions random, streams iid
      const Dist pr[3] = {random_type(pick, 0, 10), random_type(pick, 1, 10), random_type(pick, 2, 10)};
      const IidSource r0(pr[0], trial, 0), r1(pr[1], trial, 1), r2(pr[2], trial, 2);
      const SampleSource* by_role[3] = {&r0, &r1, &r2};
      const SampleSource* s[3];
      for (int i = 0; i < 3; ++i) s[i] = by_role[m->order()[static_cast<std::size_t>(i)]];
      std::vector<Dist> q;
      for (int i = 0; i < 3; ++i) {
        const bool fixed = i < m->ell();
        const long len = ceil_count(a[static_cast<std::size_t>(i)], fixed ? n : n - 1);
        std::vector<int> v(static_cast<std::size_t>(len));
        for (long j = 0; j < len; ++j) v[static_cast<std::size_t>(j)] = s[i]->at(static_cast<std::uint64_t>(j));
        q.push_back(empirical(v, 2).dist());
      }
      const double eta = m->eta(n);
      const bool in_union = m->dist_to_H0(q) < eta || m->dist_to_H1(q) < eta;
      const auto o = two_phase_test(s, n, *m, a, m->ell());
      CHECK((o.decision == 0 || o.decision == 1));
      if (in_union) {
        CHECK(o.tau == n - 1);
        ++early;
      } else {
        CHECK(o.tau == n * n);
        ++late;
      }
    }
    CHECK(early > 0);
    CHECK(late > 0);
  }
}

TEST_CASE("fixed-length test") {
  const auto inst = constant_inst(0.05, 0.7, 1.3);
  CHECK(g1(kP0, kP0, kP1, inst) == doctest::Approx(-0.05).epsilon(1e-12));
  CHECK(fixed_length_test(kP0, kP0, kP1, inst) == 0);

  // plain GJS threshold rule on floored empiricals
  CounterRng rng(3, 0);
  int agree = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Dist q = random_type(rng, 3 * i, 100, 1), q0 = random_type(rng, 3 * i + 1, 70, 1),
               q1 = random_type(rng, 3 * i + 2, 130, 2);
    const int d = fixed_length_test(q, q0, q1, inst);
    const int rule = gjs(q0, q, 0.7).value < 0.05 ? 0 : 1;
    agree += d == rule;
  }
  CHECK(agree == 1000);
}

TEST_CASE("fixed-length test depends only on the types") {
  const auto inst = constant_inst(0.1, 1.0, 1.0);
  std::vector<int> x = sample_iid(Dist{0.4, 0.6}, 40, 9, 0), x0 = sample_iid(kP0, 40, 9, 1),
                   x1 = sample_iid(kP1, 40, 9, 2);
  const int base = fixed_length_test(empirical(x, 2).dist(), empirical(x0, 2).dist(), empirical(x1, 2).dist(), inst);
  CounterRng rng(4, 4);
  for (int k = 0; k < 100; ++k) {
    for (std::size_t i = x.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform(static_cast<std::uint64_t>(k * 100 + i)) * (i + 1));
      std::swap(x[i], x[std::min(j, i)]);
    }
    CHECK(fixed_length_test(empirical(x, 2).dist(), empirical(x0, 2).dist(), empirical(x1, 2).dist(), inst) == base);
  }
}

TEST_CASE("constant fast path and generic search decide alike") {
  const auto inst = constant_inst(0.08, 0.7, 1.3);
  ProblemInstance generic = inst;
  generic.lambda = LambdaSpec::custom([](const Dist&, const Dist&) { return 0.08; });
  const auto fast = make_model(SetupKind::FullySeq, inst);
  const auto slow = make_model(SetupKind::FullySeq, generic, true);
  CounterRng rng(6, 0);
  int same = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::vector<Dist> q{random_type(rng, 3 * i, 20, 1), random_type(rng, 3 * i + 1, 14, 1),
                              random_type(rng, 3 * i + 2, 26, 1)};
    same += (fast->g1_at(q) < 0) == (slow->g1_at(q) < 0);
  }
  CHECK(same == 1000);
}

TEST_CASE("scaled renyi decisions against grid g1") {
  const ProblemInstance inst{kP0, kP1, 0.7, 1.3, EpsilonFloor(0.01), LambdaSpec::scaled_renyi(0.5, 0.0)};
  CounterRng rng(8, 0);
  int checked = 0, agree = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Dist q = random_type(rng, 3 * i, 20, 1), q0 = random_type(rng, 3 * i + 1, 14, 1),
               q1 = random_type(rng, 3 * i + 2, 26, 1);
    const double grid = reference::g1_grid(q, q0, q1, inst, 200);
    // grid resolution is about 1e-3 bits; closer calls are not informative
    if (std::abs(grid) < 2e-3) continue;
    ++checked;
    agree += (fixed_length_test(q, q0, q1, inst) == 0) == (grid < 0);
  }
  CHECK(checked >= 90);
  CHECK(agree == checked);
}
