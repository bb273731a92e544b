#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wadgelab/effective.hpp"
#include "wadgelab/hierarchy.hpp"
#include "wadgelab/lattice.hpp"
#include "wadgelab/ordinal.hpp"
#include "wadgelab/reduction.hpp"
#include "wadgelab/upset.hpp"

namespace wadge {

// A family of subsets of N with a membership predicate. `depth` bounds the
// work a predicate may spend before answering Unknown.
struct NamedFamily {
  std::string name;
  std::vector<std::string> params;
  std::function<TriBool(const UPSet&, std::uint64_t)> membership;

  TriBool operator()(const UPSet& x, std::uint64_t depth = 256) const { return membership(x, depth); }
};

// ---- special chains ----

// With alpha = w*Q + R and M rows (Q, plus one if R > 0):
// a_{w*q+r} = 3(M*r + q), and the block A_{w*q+r} = {3(M*m + q) + 1 | m has
// 2-adic valuation r}, so the blocks are disjoint infinite subsets of 3N+1.
struct SpecialChain {
  Ordinal alpha;
  std::uint64_t rows = 1;
  NamedFamily family;            // the D_alpha family A
  std::vector<Ordinal> indices;  // materialized beta <= alpha, ascending
  std::vector<UPSet> elements;   // X_beta for each index

  std::uint64_t a(const Ordinal& delta) const;
  UPSet block(const Ordinal& delta) const;
  // (3N+2) | union of {a_d} | A_d over beta <= d < alpha
  UPSet element(const Ordinal& beta) const;
};

// Finite alpha = n: every beta <= n is materialized.
SpecialChain special_chain(std::uint64_t n);
// alpha < w^2; `betas` (each <= alpha) are materialized, alpha always is.
SpecialChain special_chain(const Ordinal& alpha, std::vector<Ordinal> betas);

// ---- Proposition on one-to-one vs finite-to-one ----

struct CounterexampleTrio {
  NamedFamily o1, o2, o3;
  EffectiveMap f;  // X \ {0}
  EffectiveMap g;  // X if 0 in X and X meets N\{0}, else empty
};

CounterexampleTrio counterexample_trio();

// Truncation to P_k: O1 = nonempty, O2 meets {1..k-1}, O3 contains 0 and meets {1..k-1}.
struct TrioTruncation {
  Family o1, o2, o3;
  MonotoneMap f, g;
};

TrioTruncation counterexample_trio_truncated(int k);

// ---- duality failure ----

struct DualityReport {
  bool contradiction = false;
  bool exact = false;
  std::string failing_point;  // "2N+1", "{0}|2N+1" or "monotonicity"
  std::string reason;
};

struct DualityWitness {
  NamedFamily x;  // sets containing 0
  NamedFamily y;  // finite sets
  // Evaluates h on 2N+1 and {0}|2N+1 and reports where h stops being a reduction.
  DualityReport check(const EffectiveMap& h, std::uint64_t depth) const;
};

DualityWitness duality_failure_witness();

// ---- well-founded trees ----

using Sequence = std::vector<std::uint64_t>;

class BTree {
 public:
  // Prefix-closed, containing the empty sequence; throws InvalidInput otherwise.
  explicit BTree(std::vector<Sequence> nodes);
  static BTree root_only() { return BTree({Sequence{}}); }

  const std::vector<Sequence>& nodes() const { return nodes_; }  // breadth-first order
  bool contains(const Sequence& s) const;
  // Breadth-first even labels, xi(nil) = 0.
  std::uint64_t xi(const Sequence& s) const;
  // {xi(s|i) | i <= |s|}
  FiniteSet e(const Sequence& s) const;

 private:
  std::vector<Sequence> nodes_;
};

struct BtFamilies {
  NamedFamily b;  // X not inside any e(sigma)
  NamedFamily y;  // e(sigma) for odd |sigma|
  NamedFamily z;  // y | b
};

BtFamilies bt_family(const BTree& t);

// ---- Y_{alpha,beta} ----

// a_{w*q+r} = 2^{q+1}(2r+1) + 1, a one-to-one enumeration of part of 2N+3.
std::uint64_t odd_code(const Ordinal& delta);
// Inverse of odd_code on codes; nullopt for other numbers.
std::optional<Ordinal> odd_code_index(std::uint64_t x);

struct YAlphaBeta {
  Ordinal alpha, beta;
  bool proper_hypothesis = false;  // w <= beta and beta + alpha = alpha
  NamedFamily a;        // D_alpha family of item 2
  NamedFamily a_beta;   // item 3
  NamedFamily y_alpha;  // e(sigma), |sigma| odd
  NamedFamily y;        // a_beta | y_alpha
  NamedFamily z;        // (B(T) & B_{0}) | y
  // X_delta = {a_d | d >= delta, d < alpha} | {1}
  UPSet chain_element(const Ordinal& delta) const;
  std::vector<Ordinal> chain_indices;  // a finite sample of delta <= beta
  std::vector<UPSet> chain;
};

// Requires alpha < w^2 and beta < alpha (HypothesisFailed otherwise).
YAlphaBeta y_alpha_beta(const Ordinal& alpha, const Ordinal& beta, const BTree& t);

// Reduction of Y_{alpha,beta} to Y_{alpha,gamma} (and Z to Z) for w <= beta < gamma < alpha.
EffectiveMap y_alpha_beta_map(const Ordinal& alpha, const Ordinal& beta, const Ordinal& gamma);

// ---- the R chain ----

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den = 1);
  std::string to_string() const;
  std::strong_ordering operator<=>(const Rational& other) const;
  bool operator==(const Rational& other) const = default;
};

struct PatternEntry {
  Rational q;
  std::int64_t z = 0;
  bool in = false;
};

// Either (q, z) or the cut just below the rational of sorted position `gap`
// (gap == count means above all of them).
struct RIndex {
  bool is_gap = false;
  Rational q;
  std::int64_t z = 0;
  std::size_t gap = 0;
};

struct RChainPoint {
  RIndex index;
  UPSet set;
  bool expected = false;  // pattern membership (always false at gaps)
};

struct RChain {
  std::vector<Rational> rationals;  // in enumeration (input) order; E_i for the i-th
  std::vector<int> eps;             // per rational: 0 iff (q, 0) is in the pattern
  std::vector<std::size_t> sorted;  // enumeration positions in ascending order
  std::vector<UPSet> gaps;          // gaps[s]: union of E | E+1 over the s smallest rationals
  std::vector<RChainPoint> points;  // ascending in the R order, gaps included

  // X at any (q, z) with q materialized, or any gap.
  UPSet at(const RIndex& index) const;
  // Strict R order on indices of this chain.
  bool less(const RIndex& a, const RIndex& b) const;
};

// InvalidPattern unless the entries extend to an alternation (same parity
// class per rational; repeated entries must agree).
RChain r_chain(const std::vector<PatternEntry>& pattern);

// 0, 1, -1, 1/2, -1/2, 2, -2, ... (Calkin-Wilf order with signs).
std::vector<Rational> enumerated_rationals(std::size_t count);
// A computable alternation over the first `count` rationals and z in
// [zmin, zmax]: (q_i, z) is in iff z - (i mod 2) is even.
std::vector<PatternEntry> standard_pattern(std::size_t count, std::int64_t zmin, std::int64_t zmax);

// ---- increasing S2 chain ----

// X_j = {0..j} (a_b = b): in S2 at even j, out at odd j.
std::vector<UPSet> increasing_s2_chain(std::size_t m);

// ---- complete but not one-to-one complete ----

struct CompleteNotOneToOne {
  std::uint64_t n = 0;
  std::vector<UPSet> parts;  // A_0..A_{n-1}, a partition of N
  NamedFamily h;
  std::vector<UPSet> chain;  // X_b = union of A_d, b <= d <= n; X_n = empty
};

CompleteNotOneToOne complete_not_one_to_one(std::uint64_t n);

// The same construction on P_k, with A_b = {b} for b < n-1 and the remaining
// atoms in A_{n-1}. Requires 1 <= n <= k.
struct CompleteNotOneToOneFinite {
  Family h;
  DiffSequence seq;
  AltChain chain;
};

CompleteNotOneToOneFinite complete_not_one_to_one_finite(int k, unsigned n);

// Necessary condition for reducing into a subset-closed family.
bool fin_obstruction(const FiniteLattice& lattice, const Family& f);

// U_b = points meeting x_0 outside x_{b+1}; D of it makes the chain special.
// InvalidChain unless the chain strictly decreases.
DiffSequence alt_family_from_chain(const AltChain& chain, int k);

}  // namespace wadge
