#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace seqclass {

// Probability vector on {0,...,d-1}. Validated on construction, immutable afterwards.
class Dist {
 public:
  using Storage = boost::container::small_vector<double, 8>;

  explicit Dist(std::span<const double> probs);
  Dist(std::initializer_list<double> probs);
  explicit Dist(const std::vector<double>& probs) : Dist(std::span<const double>(probs)) {}

  static Dist uniform(std::size_t d);
  // Normalizes non-negative weights (at least one positive).
  static Dist from_weights(std::span<const double> w);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probs() const { return {p_.data(), p_.size()}; }
  std::vector<double> to_vector() const { return {p_.begin(), p_.end()}; }

  bool operator==(const Dist& o) const { return p_ == o.p_; }

 private:
  Storage p_;
};

double l1_distance(const Dist& a, const Dist& b);
double linf_distance(const Dist& a, const Dist& b);

class EpsilonFloor {
 public:
  explicit EpsilonFloor(double epsilon);
  double value() const { return eps_; }
  // Throws unless epsilon < 1/d.
  void check_alphabet(std::size_t d) const;
  bool admits(const Dist& p) const;

 private:
  double eps_;
};

struct EmpiricalType {
  std::vector<long> counts;
  long n = 0;
  Dist dist() const;
};

EmpiricalType empirical(std::span<const int> samples, int d);

// Counter-based generator: the value at (seed, stream, index) never depends on call order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t bits(std::uint64_t index) const;
  // Uniform on [0,1) with 53 random bits.
  double uniform(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

// Inverse-CDF draw of one symbol from p with uniform u in [0,1).
int draw_symbol(const Dist& p, double u);

std::vector<int> sample_iid(const Dist& p, long n, std::uint64_t seed, std::uint64_t stream = 0);

// All compositions k/m with sum k = m, in lexicographic order of (k_0, ..., k_{d-2}).
class SimplexGrid {
 public:
  SimplexGrid(std::size_t d, int m);
  static SimplexGrid from_resolution(std::size_t d, double resolution);

  static double count(std::size_t d, int m);  // C(m+d-1, d-1) as a double
  std::size_t size() const { return count_; }
  std::size_t dim() const { return d_; }
  int density() const { return m_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Dist;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Dist;

    iterator() = default;
    Dist operator*() const;
    const std::vector<int>& counts() const { return k_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || k_ == o.k_); }

   private:
    friend class SimplexGrid;
    std::vector<int> k_;
    int m_ = 0;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const { return {}; }

 private:
  std::size_t d_;
  int m_;
  std::size_t count_;
};

// Enumerates integer vectors k with lo <= k <= hi componentwise and sum k = total,
// in lexicographic order. Returns the number of visited points.
std::size_t for_each_composition(int total, std::span<const int> lo, std::span<const int> hi,
                                 const std::function<void(std::span<const int>)>& visit);

Dist composition_to_dist(std::span<const int> k, int m);

Dist clamp_to_eps(const Dist& p, const EpsilonFloor& eps);

}  // namespace seqclass
