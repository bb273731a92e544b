#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wadge {

using FiniteSet = std::vector<std::uint64_t>;  // sorted, duplicate-free

// Ultimately periodic subset of N: an explicit part below `threshold` and a
// tail {n >= threshold | n mod period in residues}. Always canonical
// (minimal period, then minimal threshold), so == is set equality.
class UPSet {
 public:
  using Word = std::uint64_t;

  static constexpr std::uint64_t kMaxPeriod = std::uint64_t{1} << 26;
  static constexpr std::uint64_t kMaxThreshold = std::uint64_t{1} << 26;

  UPSet();  // empty set

  static UPSet empty() { return UPSet(); }
  static UPSet naturals();
  static UPSet finite(std::span<const std::uint64_t> elements);
  static UPSet finite(std::initializer_list<std::uint64_t> elements);
  // [lo, hi)
  static UPSet interval(std::uint64_t lo, std::uint64_t hi);
  // {offset + step*t | t in N}
  static UPSet make_ap(std::uint64_t offset, std::uint64_t step);
  // {n >= lo}
  static UPSet at_least(std::uint64_t lo);
  // Explicit list below threshold; residues are absolute classes mod period.
  static UPSet from_parts(std::uint64_t threshold, std::span<const std::uint64_t> explicit_elements,
                          std::uint64_t period, std::span<const std::uint64_t> residues);
  // Membership given on [0, threshold + period); must be period-periodic past threshold.
  static UPSet tabulate(std::uint64_t threshold, std::uint64_t period,
                        const std::function<bool(std::uint64_t)>& member);

  std::uint64_t threshold() const { return threshold_; }
  std::uint64_t period() const { return period_; }
  FiniteSet explicit_elements() const;
  FiniteSet residues() const;

  bool contains(std::uint64_t n) const;
  bool is_empty() const;
  bool is_infinite() const;
  bool is_finite() const { return !is_infinite(); }
  // Number of elements; only meaningful for finite sets (nullopt otherwise).
  std::optional<std::uint64_t> size() const;
  std::optional<std::uint64_t> min_element() const;
  std::optional<std::uint64_t> max_element() const;  // finite sets only
  // Least element >= n.
  std::optional<std::uint64_t> next_element(std::uint64_t n) const;
  FiniteSet elements_below(std::uint64_t bound) const;
  // Bound past which membership is decided by the residue table alone.
  std::uint64_t window() const { return threshold_ + period_; }

  UPSet complement() const;
  UPSet unite(const UPSet& other) const;
  UPSet intersect(const UPSet& other) const;
  UPSet minus(const UPSet& other) const;
  bool is_subset_of(const UPSet& other) const;
  bool intersects(const UPSet& other) const;
  // {x + i | x in this}
  UPSet shifted(std::uint64_t i) const;

  std::string to_string() const;

  bool operator==(const UPSet& other) const;

  friend UPSet operator|(const UPSet& a, const UPSet& b) { return a.unite(b); }
  friend UPSet operator&(const UPSet& a, const UPSet& b) { return a.intersect(b); }
  friend UPSet operator-(const UPSet& a, const UPSet& b) { return a.minus(b); }
  friend UPSet operator~(const UPSet& a) { return a.complement(); }

 private:
  enum class Op { Union, Intersect, Difference };

  UPSet combine(const UPSet& other, Op op) const;
  // Bits [start, start+64) of the periodic sequence n -> residue(n mod period).
  Word cycle_word(std::uint64_t start) const;
  bool cycle_bit(std::uint64_t n) const;
  // Prefix words covering [0, t) and cycle words covering one period L
  // (a multiple of period_), both for the same set.
  void materialize(std::uint64_t t, std::uint64_t length, std::vector<Word>& prefix,
                   std::vector<Word>& cycle) const;
  static UPSet from_bits(std::uint64_t threshold, std::vector<Word> prefix, std::uint64_t period,
                         std::vector<Word> cycle);
  void canonicalize();
  void extend_cycle();

  std::uint64_t threshold_ = 0;
  std::vector<Word> prefix_;  // bits [0, threshold_)
  std::uint64_t period_ = 1;
  // period_ bits followed by 64 wrap-around bits, so any 64-bit window of the
  // periodic sequence is one unaligned read.
  std::vector<Word> cycle_;
};

// E_i = {2^{i+1}(2t+1) | t in N}; the E_i partition the positive evens.
UPSet dyadic_partition(unsigned i);

// Image of z under the increasing enumeration of the infinite set `range`.
UPSet enumerate_image(const UPSet& range, const UPSet& z);

// Position of x in the increasing enumeration of `range` (x must be a member).
std::uint64_t enumeration_index(const UPSet& range, std::uint64_t x);

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap);

}  // namespace wadge
