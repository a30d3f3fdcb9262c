#include "seqclass/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace seqclass {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kMaxGridPoints = 2e9;

void validate(const Dist::Storage& p) {
  if (p.size() < 2) throw std::invalid_argument("Dist needs at least 2 entries");
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("Dist entries must be finite and >= 0");
    s += v;
  }
  if (std::abs(s - 1.0) > kSumTol) {
    throw std::invalid_argument("Dist entries must sum to 1 (got " + std::to_string(s) + ")");
  }
}

}  // namespace

Dist::Dist(std::span<const double> probs) : p_(probs.begin(), probs.end()) { validate(p_); }

Dist::Dist(std::initializer_list<double> probs) : p_(probs.begin(), probs.end()) { validate(p_); }

Dist Dist::uniform(std::size_t d) {
  std::vector<double> v(d, 1.0 / static_cast<double>(d));
  return Dist(v);
}

Dist Dist::from_weights(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights must be >= 0");
    s += v;
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("weights must have a positive finite sum");
  Storage p(w.begin(), w.end());
  for (double& v : p) v /= s;
  // Renormalize once more so the sum check cannot fail on long vectors.
  double s2 = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= s2;
  return Dist(std::span<const double>(p.data(), p.size()));
}

double l1_distance(const Dist& a, const Dist& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double linf_distance(const Dist& a, const Dist& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

EpsilonFloor::EpsilonFloor(double epsilon) : eps_(epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/d)");
}

void EpsilonFloor::check_alphabet(std::size_t d) const {
  if (!(eps_ * static_cast<double>(d) < 1.0)) {
    throw std::invalid_argument("epsilon must be below 1/d for alphabet size " + std::to_string(d));
  }
}

bool EpsilonFloor::admits(const Dist& p) const {
  for (double v : p.probs())
    if (v < eps_) return false;
  return true;
}

Dist EmpiricalType::dist() const {
  std::vector<double> v(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) v[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return Dist(v);
}

EmpiricalType empirical(std::span<const int> samples, int d) {
  if (d < 2) throw std::invalid_argument("alphabet size must be >= 2");
  if (samples.empty()) throw std::invalid_argument("empirical type needs at least one sample");
  EmpiricalType t;
  t.counts.assign(static_cast<std::size_t>(d), 0);
  for (int s : samples) {
    if (s < 0 || s >= d) throw std::out_of_range("sample index outside alphabet");
    ++t.counts[static_cast<std::size_t>(s)];
  }
  t.n = static_cast<long>(samples.size());
  return t;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ (b * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)); }

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(hash_combine(seed, stream)) {}

std::uint64_t CounterRng::bits(std::uint64_t index) const { return mix64(key_ ^ mix64(index)); }

double CounterRng::uniform(std::uint64_t index) const {
  return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
}

int draw_symbol(const Dist& p, double u) {
  double c = 0.0;
  const std::size_t d = p.size();
  for (std::size_t i = 0; i + 1 < d; ++i) {
    c += p[i];
    if (u < c) return static_cast<int>(i);
  }
  // Fall through to the last symbol with positive mass.
  for (std::size_t i = d; i-- > 0;)
    if (p[i] > 0.0) return static_cast<int>(i);
  return static_cast<int>(d - 1);
}

std::vector<int> sample_iid(const Dist& p, long n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("sample_iid needs n >= 1");
  CounterRng rng(seed, stream);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = draw_symbol(p, rng.uniform(static_cast<std::uint64_t>(i)));
  return out;
}

double SimplexGrid::count(std::size_t d, int m) {
  // C(m+d-1, d-1) in floating point, good enough for the overflow guard.
  double c = 1.0;
  for (std::size_t j = 1; j < d; ++j) c = c * static_cast<double>(m + static_cast<int>(j)) / static_cast<double>(j);
  return std::round(c);
}

SimplexGrid::SimplexGrid(std::size_t d, int m) : d_(d), m_(m) {
  if (d < 2) throw std::invalid_argument("grid needs d >= 2");
  if (m < 2) throw std::invalid_argument("grid needs m >= 2");
  const double c = count(d, m);
  if (c > kMaxGridPoints) throw std::length_error("simplex grid too large to enumerate");
  count_ = static_cast<std::size_t>(c);
}

SimplexGrid SimplexGrid::from_resolution(std::size_t d, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  const double inv = 1.0 / resolution;
  const double m = std::round(inv);
  if (std::abs(inv - m) > 1e-9 * m || m > 1e9) throw std::invalid_argument("resolution must equal 1/m for an integer m");
  return SimplexGrid(d, static_cast<int>(m));
}

SimplexGrid::iterator SimplexGrid::begin() const {
  iterator it;
  it.k_.assign(d_, 0);
  it.k_[d_ - 1] = m_;
  it.m_ = m_;
  it.done_ = false;
  return it;
}

Dist SimplexGrid::iterator::operator*() const { return composition_to_dist(k_, m_); }

SimplexGrid::iterator& SimplexGrid::iterator::operator++() {
  const std::size_t d = k_.size();
  const std::size_t free = d - 1;
  if (k_[d - 1] > 0) {
    ++k_[free - 1];
    --k_[d - 1];
    return *this;
  }
  std::size_t i = free;
  while (i > 0 && k_[i - 1] == 0) --i;
  // i-1 is now the rightmost nonzero free coordinate.
  if (i <= 1) {
    done_ = true;
    return *this;
  }
  const int v = k_[i - 1];
  k_[i - 1] = 0;
  ++k_[i - 2];
  k_[d - 1] = v - 1;
  return *this;
}

std::size_t for_each_composition(int total, std::span<const int> lo, std::span<const int> hi,
                                 const std::function<void(std::span<const int>)>& visit) {
  const std::size_t d = lo.size();
  if (hi.size() != d || d == 0) throw std::invalid_argument("bounds dimension mismatch");
  // suffix sums of bounds decide the feasible range of each coordinate
  std::vector<long> lo_suf(d + 1, 0), hi_suf(d + 1, 0);
  for (std::size_t i = d; i-- > 0;) {
    lo_suf[i] = lo_suf[i + 1] + lo[i];
    hi_suf[i] = hi_suf[i + 1] + hi[i];
  }
  if (lo_suf[0] > total || hi_suf[0] < total) return 0;
  std::vector<int> k(d, 0);
  std::size_t visited = 0;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rem) {
    if (i == d - 1) {
      if (rem < lo[i] || rem > hi[i]) return;
      k[i] = static_cast<int>(rem);
      ++visited;
      visit(k);
      return;
    }
    const long from = std::max<long>(lo[i], rem - hi_suf[i + 1]);
    const long to = std::min<long>(hi[i], rem - lo_suf[i + 1]);
    for (long v = from; v <= to; ++v) {
      k[i] = static_cast<int>(v);
      rec(i + 1, rem - v);
    }
  };
  rec(0, total);
  return visited;
}

Dist composition_to_dist(std::span<const int> k, int m) {
  Dist::Storage p(k.size());
  // The counts sum to m exactly; only the division rounds.
  for (std::size_t i = 0; i < k.size(); ++i) p[i] = static_cast<double>(k[i]) / static_cast<double>(m);
  return Dist(std::span<const double>(p.data(), p.size()));
}

Dist clamp_to_eps(const Dist& p, const EpsilonFloor& eps) {
  const double e = eps.value();
  eps.check_alphabet(p.size());
  double deficit = 0.0, surplus = 0.0;
  for (double v : p.probs()) {
    if (v < e) deficit += e - v;
    else surplus += v - e;
  }
  if (deficit == 0.0) return p;
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p[i];
    out[i] = v < e ? e : v - deficit * (v - e) / surplus;
  }
  return Dist(out);
}

}  // namespace seqclass
