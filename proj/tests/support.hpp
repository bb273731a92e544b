#pragma once

// Hand-rolled generators and naive reference models shared by the tests.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "wadgelab/hierarchy.hpp"
#include "wadgelab/lattice.hpp"
#include "wadgelab/upset.hpp"

namespace testing_support {

using namespace wadge;

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("WADGELAB_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt = 0) : rng_(base_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  std::uint64_t below(std::uint64_t n) { return n ? rng_() % n : 0; }
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  std::uint64_t bits() { return rng_(); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Raw description of an ultimately periodic set, evaluated naively.
struct RawSet {
  std::uint64_t threshold = 0;
  std::vector<bool> prefix;  // membership below threshold
  std::uint64_t period = 1;
  std::vector<bool> cycle;   // membership of residues

  bool contains(std::uint64_t n) const {
    return n < threshold ? prefix[n] : static_cast<bool>(cycle[n % period]);
  }
  UPSet build() const {
    std::vector<std::uint64_t> ex, res;
    for (std::uint64_t i = 0; i < threshold; ++i)
      if (prefix[i]) ex.push_back(i);
    for (std::uint64_t r = 0; r < period; ++r)
      if (cycle[r]) res.push_back(r);
    return UPSet::from_parts(threshold, ex, period, res);
  }
};

inline RawSet random_raw(Gen& g, std::uint64_t max_threshold = 40, std::uint64_t max_period = 12,
                         double density = 0.4) {
  RawSet r;
  r.threshold = g.below(max_threshold + 1);
  r.period = g.range(1, max_period);
  for (std::uint64_t i = 0; i < r.threshold; ++i) r.prefix.push_back(g.coin(density));
  const bool empty_tail = g.coin(0.25);
  for (std::uint64_t i = 0; i < r.period; ++i) r.cycle.push_back(!empty_tail && g.coin(density));
  return r;
}

inline UPSet random_upset(Gen& g, std::uint64_t max_threshold = 40, std::uint64_t max_period = 12) {
  return random_raw(g, max_threshold, max_period).build();
}

inline UPSet random_finite(Gen& g, std::uint64_t bound, double density = 0.3) {
  std::vector<std::uint64_t> xs;
  for (std::uint64_t i = 0; i < bound; ++i)
    if (g.coin(density)) xs.push_back(i);
  return UPSet::finite(xs);
}

inline Family random_family(Gen& g, int k) {
  const std::uint32_t n = 1u << k;
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return Family(k, g.bits() & mask);
}

// Upset generated by a few random points.
inline Family random_upset_family(Gen& g, int k) {
  Family f(k);
  const std::uint64_t gens = g.below(3);
  for (std::uint64_t i = 0; i < gens; ++i) f = f.with(static_cast<Point>(g.below(1u << k)));
  return upward_closure(f);
}

inline DiffSequence random_diff_sequence(Gen& g, int k, std::size_t n) {
  DiffSequence s;
  s.k = k;
  Family u(k);
  for (std::size_t i = 0; i < n; ++i) {
    u = u | random_upset_family(g, k);
    s.upsets.push_back(u);
  }
  return s;
}

// Strictly decreasing chain of `len` points, top first (len <= k+1): nested
// prefixes of a shuffled atom order with distinct sizes.
inline AltChain random_chain(Gen& g, int k, std::size_t len) {
  std::vector<std::uint32_t> atoms(k);
  std::iota(atoms.begin(), atoms.end(), 0u);
  std::shuffle(atoms.begin(), atoms.end(), g.engine());
  std::vector<std::size_t> sizes(k + 1);
  std::iota(sizes.begin(), sizes.end(), std::size_t{0});
  std::shuffle(sizes.begin(), sizes.end(), g.engine());
  sizes.resize(len);
  std::sort(sizes.rbegin(), sizes.rend());
  AltChain c;
  for (std::size_t m : sizes) {
    Point p = 0;
    for (std::size_t i = 0; i < m; ++i) p |= Point{1} << atoms[i];
    c.elements.push_back(p);
  }
  return c;
}

// Naive membership of D_n((U_b)): least layer, parity against n.
inline bool naive_difference(const DiffSequence& s, Point p) {
  for (std::size_t b = 0; b < s.upsets.size(); ++b)
    if (s.upsets[b].contains(p)) return (b % 2) != (s.upsets.size() % 2);
  return false;
}

inline bool naive_is_upset(const Family& f) {
  for (Point p = 0; p < (1u << f.atoms()); ++p)
    for (Point q = 0; q < (1u << f.atoms()); ++q)
      if (f.contains(p) && point_subset(p, q) && !f.contains(q)) return false;
  return true;
}

// Random partial order on n points as (i, j) pairs with i < j.
inline std::vector<std::pair<std::size_t, std::size_t>> random_order_pairs(Gen& g, std::size_t n,
                                                                           double p = 0.35) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.coin(p)) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace testing_support
