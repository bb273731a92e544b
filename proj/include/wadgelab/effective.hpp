#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wadgelab/lattice.hpp"
#include "wadgelab/upset.hpp"

namespace wadge {

// A deterministic producer: a pure function of the pull position, so it can
// be replayed from any point. A pull may yield nothing (nullopt) without the
// stream being over; `length`, when known, bounds the positions that can
// yield anything.
template <class T>
class Enumerator {
 public:
  using Source = std::function<std::optional<T>(std::uint64_t)>;

  Enumerator() : length_(0) {}
  explicit Enumerator(Source source, std::optional<std::uint64_t> length = std::nullopt,
                      bool graded = false)
      : source_(std::move(source)), length_(length), graded_(graded) {}

  static Enumerator of_list(std::vector<T> items) {
    const std::uint64_t n = items.size();
    return Enumerator(
        [items = std::move(items)](std::uint64_t pos) -> std::optional<T> {
          if (pos < items.size()) return items[pos];
          return std::nullopt;
        },
        n);
  }

  std::optional<T> at(std::uint64_t pos) const {
    if ((length_ && pos >= *length_) || !source_) return std::nullopt;
    return source_(pos);
  }
  std::optional<T> next() { return at(position_++); }
  void restart() { position_ = 0; }
  std::uint64_t position() const { return position_; }
  std::optional<std::uint64_t> length() const { return length_; }
  // For set enumerators: every set yielded at position p has an element >= p,
  // so subsets of [0, p) only appear before position p.
  bool graded() const { return graded_; }

 private:
  Source source_;
  std::optional<std::uint64_t> length_;
  bool graded_ = false;
  std::uint64_t position_ = 0;
};

using NatEnumerator = Enumerator<std::uint64_t>;
using SetEnumerator = Enumerator<FiniteSet>;

enum class Truth { In, Out, Unknown };

struct TriBool {
  Truth value = Truth::Unknown;
  std::uint64_t depth = 0;  // exhausted depth when Unknown

  static TriBool in() { return {Truth::In, 0}; }
  static TriBool out() { return {Truth::Out, 0}; }
  static TriBool unknown(std::uint64_t depth) { return {Truth::Unknown, depth}; }
  static TriBool of(bool b) { return b ? in() : out(); }

  bool is_in() const { return value == Truth::In; }
  bool is_out() const { return value == Truth::Out; }
  bool decided() const { return value != Truth::Unknown; }
  TriBool negate() const;

  friend bool operator==(const TriBool&, const TriBool&) = default;
};

std::string to_string(const TriBool& t);

// f(X) = union of W_{g(A)} over finite A <= X. g must be positionwise
// monotone (A <= B implies g(A).at(p) output <= g(B).at(p) output), which lets
// an approximation use the single largest A below the depth.
class EffectiveMap {
 public:
  using Generator = std::function<NatEnumerator(const FiniteSet&)>;
  using Closure = std::function<UPSet(const UPSet&)>;

  EffectiveMap(std::string name, Generator g, Closure exact = {},
               std::optional<std::uint64_t> support = std::nullopt);

  const std::string& name() const { return name_; }
  NatEnumerator generate(const FiniteSet& a) const { return g_(a); }
  bool has_exact() const { return static_cast<bool>(exact_); }
  // Exact image for UPSet inputs; throws InvalidInput when unavailable.
  UPSet exact(const UPSet& x) const;
  // When set: g only looks at A & [0, s) and yields only at positions < s.
  std::optional<std::uint64_t> support() const { return support_; }

 private:
  std::string name_;
  Generator g_;
  Closure exact_;
  std::optional<std::uint64_t> support_;
};

struct Approximation {
  UPSet value;
  bool exact = false;
};

// Outputs of g(X & [0, depth)) over the first `depth` pulls.
Approximation apply_effective_map(const EffectiveMap& f, const UPSet& x, std::uint64_t depth);

EffectiveMap identity_map();
EffectiveMap constant_map(const UPSet& value);
// X -> X \ {0}
EffectiveMap drop_zero_map();

// Binary-sum coding of finite sets: code(A) = sum of 2^a.
std::uint64_t finite_set_code(const FiniteSet& a);
FiniteSet decode_finite_set(std::uint64_t code);
// Cantor pairing.
std::uint64_t pair_index(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t z);

// phi(x) = {n | b_n << x} for a finite presentation.
UPSet embed_phi(const FinitePresentation& pres, std::size_t element);
// Canonical presentation of P(N): codes of finite subsets of X, truncated at `bound`.
UPSet canonical_code_set(const UPSet& x, std::uint64_t bound);

// Whether Z is phi of some element: a nonempty directed downset of basis
// indices. Indices >= depth are not inspected.
TriBool phi_image_check(const FinitePresentation& pres, const UPSet& z, std::uint64_t depth);

// U = {(I, x) | some i in I has b_i << x}.
class UniversalOpen {
 public:
  explicit UniversalOpen(FinitePresentation pres) : pres_(std::move(pres)) {}

  bool contains(const UPSet& index_set, std::size_t element) const;
  // Basis-index mask of the slice {x | (I, x) in U}.
  std::uint64_t slice(const UPSet& index_set) const;
  const FinitePresentation& presentation() const { return pres_; }

 private:
  FinitePresentation pres_;
};

using IndexRelation = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// S = {(i, j) | exists k with p_k << p_i and (k, j) in T}; sorted, unique.
IndexRelation topo_to_domain_effective(const IndexRelation& t, const FinitePresentation& src);

// Exists n with 2n in X and 2n+1 not in X.
bool s2_membership(const UPSet& x);

// Union over n of (sets containing some A in A_n) minus (sets containing some B in B_n).
struct Sigma2Family {
  std::function<SetEnumerator(std::uint64_t)> a;
  std::function<SetEnumerator(std::uint64_t)> b;
  // A_n and B_n are empty for n >= index_bound.
  std::optional<std::uint64_t> index_bound;
  // Optional certificate that X misses every piece n >= depth.
  std::function<bool(const UPSet&, std::uint64_t)> tail_refuter;
  // Finite lists, kept for serialization and exact images.
  std::optional<std::pair<std::vector<std::vector<FiniteSet>>, std::vector<std::vector<FiniteSet>>>> lists;

  static Sigma2Family from_lists(std::vector<std::vector<FiniteSet>> a,
                                 std::vector<std::vector<FiniteSet>> b);
  // A_n = {{}} and B_n = {{m} | m >= n}: the family of finite sets.
  static Sigma2Family fin_style();
};

TriBool sigma2_membership(const Sigma2Family& family, const UPSet& x, std::uint64_t depth);

// f(X) = {2n | some A in A_n, A <= X} | {2n+1 | some B in B_n, B <= X}.
EffectiveMap s2_reduction(const Sigma2Family& family);

}  // namespace wadge
