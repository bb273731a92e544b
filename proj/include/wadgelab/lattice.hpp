#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wadge {

// Subset of {0..k-1} as a bit mask.
using Point = std::uint32_t;

inline bool point_subset(Point p, Point q) { return (p & ~q) == 0; }

// The powerset lattice P({0..k-1}) with 0 <= k <= 6.
class FiniteLattice {
 public:
  static constexpr int kMaxAtoms = 6;
  static constexpr int kMaxEnumerableAtoms = 4;

  explicit FiniteLattice(int k);

  int atoms() const { return k_; }
  std::uint32_t size() const { return 1u << k_; }
  Point top() const { return size() - 1; }
  bool contains(Point p) const { return p < size(); }

  friend bool operator==(const FiniteLattice&, const FiniteLattice&) = default;

 private:
  int k_;
};

// A set of points of P({0..k-1}), packed into one 64-bit word.
class Family {
 public:
  Family() = default;
  explicit Family(int k, std::uint64_t bits = 0);

  static Family whole(int k);
  static Family from_points(int k, std::span<const Point> points);
  static Family from_points(int k, std::initializer_list<Point> points);

  int atoms() const { return k_; }
  FiniteLattice lattice() const { return FiniteLattice(k_); }
  std::uint64_t bits() const { return bits_; }
  std::uint64_t universe() const;
  bool contains(Point p) const { return (bits_ >> p) & 1; }
  std::uint32_t count() const;
  bool empty() const { return bits_ == 0; }
  std::vector<Point> points() const;

  Family complement() const { return Family(k_, ~bits_ & universe()); }
  Family with(Point p) const { return Family(k_, bits_ | (std::uint64_t{1} << p)); }

  friend Family operator|(const Family& a, const Family& b);
  friend Family operator&(const Family& a, const Family& b);
  friend Family operator-(const Family& a, const Family& b);
  friend bool operator==(const Family&, const Family&) = default;

  std::string to_string() const;

 private:
  int k_ = 0;
  std::uint64_t bits_ = 0;
};

bool is_upset(const Family& f);
bool is_downset(const Family& f);
Family upward_closure(const Family& f);
Family downward_closure(const Family& f);
// {q | a subset of q}
Family basic_open(const FiniteLattice& lattice, Point a);
// Every upset, ascending by bit pattern; k <= 4.
std::vector<Family> all_upsets(const FiniteLattice& lattice);
// Every family of P_k, k <= 4 (2^(2^k) of them), ascending.
std::uint64_t family_count(const FiniteLattice& lattice);

// A finite poset given by its way-below relation on basis indices 0..n-1
// (reflexive, transitive, antisymmetric); every element is compact.
class FinitePresentation {
 public:
  static constexpr std::size_t kMaxSize = 64;

  FinitePresentation() = default;
  // Pairs (i, j) meaning b_i << b_j; the reflexive-transitive closure is
  // taken, and a cycle is rejected.
  FinitePresentation(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> pairs);

  static FinitePresentation from_lattice(const FiniteLattice& lattice);
  static FinitePresentation chain(std::size_t n);

  std::size_t size() const { return below_.size(); }
  bool way_below(std::size_t i, std::size_t j) const { return (below_[j] >> i) & 1; }
  // Indices i with b_i << b_j.
  std::uint64_t down_mask(std::size_t j) const { return below_[j]; }
  // Indices j with b_i << b_j.
  std::uint64_t up_mask(std::size_t i) const;
  std::vector<std::pair<std::size_t, std::size_t>> relation() const;
  bool is_upset(std::uint64_t mask) const;
  std::uint64_t all_mask() const;
  // All upsets of the poset as index masks; n <= 20.
  std::vector<std::uint64_t> all_upsets() const;

 private:
  std::vector<std::uint64_t> below_;  // below_[j] bit i <=> b_i << b_j
};

}  // namespace wadge
