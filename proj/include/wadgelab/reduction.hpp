#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wadgelab/effective.hpp"
#include "wadgelab/hierarchy.hpp"
#include "wadgelab/lattice.hpp"
#include "wadgelab/upset.hpp"

namespace wadge {

// Total map P_j -> P_k given by its table in source mask order.
class MonotoneMap {
 public:
  MonotoneMap() = default;
  MonotoneMap(int j, int k, std::vector<Point> table);

  static MonotoneMap identity(int k);
  static MonotoneMap constant(int j, int k, Point value);
  // Atom permutation: point p goes to {perm[i] | i in p}.
  static MonotoneMap from_permutation(const std::vector<std::uint32_t>& perm);

  int source_atoms() const { return j_; }
  int target_atoms() const { return k_; }
  const std::vector<Point>& table() const { return table_; }
  Point operator()(Point p) const { return table_.at(p); }

  bool is_monotone() const;
  bool is_injective() const;
  // Largest number of source points sent to one target point.
  std::uint32_t max_preimage() const;
  Family preimage(const Family& target) const;

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

 private:
  int j_ = 0;
  int k_ = 0;
  std::vector<Point> table_;
};

struct SearchConstraint {
  enum class Mode { Any, OneToOne, BoundedPreimage };
  Mode mode = Mode::Any;
  std::uint32_t bound = 0;  // BoundedPreimage only, >= 1

  static SearchConstraint any() { return {Mode::Any, 0}; }
  static SearchConstraint one_to_one() { return {Mode::OneToOne, 1}; }
  static SearchConstraint bounded(std::uint32_t b);
  // "any", "1to1" or "fto1:<b>"
  static SearchConstraint parse(const std::string& text);
  std::string to_string() const;
  bool admits(const MonotoneMap& f) const;
};

struct SearchOptions {
  std::uint64_t max_nodes = 50'000'000;
  unsigned threads = 0;  // 0: WADGELAB_THREADS or 1
  bool symmetry_pruning = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

// Monotone and f^{-1}(B) == A. ShapeMismatch on dimension errors.
bool check_reduction(const MonotoneMap& f, const Family& a, const Family& b);

// Exhaustive backtracking (j, k <= 4). Returns the least witness in search
// order (points by popcount then mask, images ascending) or nullopt when
// none exists. ResourceBound when the node budget runs out.
std::optional<MonotoneMap> search_reduction(const Family& a, const Family& b, SearchConstraint c,
                                            const SearchOptions& options = {},
                                            SearchStats* stats = nullptr);

// Every monotone map P_j -> P_k in lexicographic table order; ResourceBound
// past `limit` maps.
std::vector<MonotoneMap> all_monotone_maps(int j, int k, std::size_t limit = 1'000'000);

// f(z) = y_{tau(z)}, tau(z) the least b with z in U_b (else n). The chain
// must be H-alternating with n+1 points.
MonotoneMap hardness_reduction_from_chain(const AltChain& chain, const Family& h, const DiffSequence& seq);

struct UniversalityReport {
  int k = 0;
  unsigned n = 0;
  std::size_t maps = 0;
  std::vector<Family> slices;  // distinct preimages f^{-1}(S), ascending
  bool complete = false;       // every D_n family is a slice
  bool exact = false;          // slices are exactly the D_n families
};

// U = {(f, q) | f(q) in S} over all monotone f: P_k -> P_k (k <= 3).
UniversalityReport universal_from_complete(const FiniteLattice& lattice, const Family& s, unsigned n);

// Atom permutation inducing f, or nullopt if f is not an automorphism.
std::optional<std::vector<std::uint32_t>> automorphism_decomposition(const MonotoneMap& f);

// ---- P(N) level ----

// z -> base | mu(z), mu the increasing enumeration of the infinite set `range`.
struct EnumerationEmbedding {
  UPSet base;
  UPSet range;

  UPSet apply(const UPSet& z) const { return base | enumerate_image(range, z); }
};

struct ScatteredChain {
  std::vector<UPSet> elements;               // X_0 > ... > X_a
  std::vector<EnumerationEmbedding> thetas;  // theta_b, b <= a

  std::size_t alpha() const { return elements.size() - 1; }
};

// theta_a = mu_a onto X_a and theta_b = X_{b+1} | mu_b onto X_b \ X_{b+1}.
// NotScattered if X_a or a difference is finite; InvalidChain if the
// chain does not decrease.
ScatteredChain make_scattered_chain(std::vector<UPSet> elements);
// InvalidWitness unless the thetas are the canonical embeddings of an
// infinite-difference chain.
void validate_scattered(const ScatteredChain& chain);

// V_b = sets containing some generator listed at an index <= b.
struct GeneratedSequence {
  std::vector<std::vector<FiniteSet>> generators;

  std::size_t length() const { return generators.size(); }
  // Least b with z in V_b, or length() if none.
  std::size_t tau(const UPSet& z) const;
  bool in_difference_set(const UPSet& z) const;
};

// g(z) = theta_{tau(z)}(codes of finite subsets of z).
class OneToOneReduction {
 public:
  OneToOneReduction(ScatteredChain chain, GeneratedSequence seq);

  std::size_t tau(const UPSet& z) const { return seq_.tau(z); }
  // Uses codes below `depth`; exact once every finite subset of z is coded
  // below it.
  Approximation apply(const UPSet& z, std::uint64_t depth) const;
  const ScatteredChain& chain() const { return chain_; }
  const GeneratedSequence& sequence() const { return seq_; }

 private:
  ScatteredChain chain_;
  GeneratedSequence seq_;
};

OneToOneReduction one_to_one_reduction_from_scattered(ScatteredChain sc, GeneratedSequence seq);

struct ChainImage {
  ScatteredChain chain;                        // Z_b = f(X_b) with canonical embeddings
  std::vector<EnumerationEmbedding> sources;   // X_{b+1} | mu_b on the source side
  bool exact = false;
  std::vector<bool> growing;                   // depth-approximation trend per difference
  std::optional<EffectiveMap> map;

  // theta_b(Z) = f(X_{b+1} | mu_b(Z)); exact images only.
  UPSet theta(std::size_t b, const UPSet& z) const;
};

// Images of a special chain under f. With exact images the differences are
// checked exactly (NotScattered if one is finite); otherwise they are
// approximated at depth and 2*depth.
ChainImage chain_image_transform(const EffectiveMap& f, const std::vector<UPSet>& special,
                                 std::uint64_t depth = 64);

}  // namespace wadge
