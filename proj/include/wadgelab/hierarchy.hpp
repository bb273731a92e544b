#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wadgelab/lattice.hpp"

namespace wadge {

// Increasing sequence of upsets U_0 <= ... <= U_{n-1} over P_k.
struct DiffSequence {
  int k = 0;
  std::vector<Family> upsets;

  std::size_t length() const { return upsets.size(); }
};

// Throws InvalidSequence unless every entry is an upset over P_k and the
// entries increase.
void validate(const DiffSequence& seq);

// D_n((U_b)): p is a member iff its least layer b exists and b, n differ in parity.
Family evaluate_difference(const DiffSequence& seq);

// x_0 > x_1 > ... > x_a, top first.
struct AltChain {
  std::vector<Point> elements;

  std::size_t length() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  friend bool operator==(const AltChain&, const AltChain&) = default;
};

bool is_strictly_decreasing(const AltChain& chain);
// x_b in F iff b !~ a, a = length-1 (so the bottom is outside F).
bool is_alternating_chain(const Family& f, const AltChain& chain);
// Alternating, every x with x_b >= x > x_{b+1} behaves like x_b, and nothing
// below the bottom is in F.
bool is_special_chain(const Family& f, const AltChain& chain);

struct ChainResult {
  std::size_t length = 0;
  AltChain witness;  // lexicographically least among longest chains
};

ChainResult longest_alternating_chain(const Family& f);

enum class Side { D, CoD, Both };
std::string_view side_name(Side side) noexcept;

struct LevelReport {
  unsigned level = 0;
  Side side = Side::D;
  AltChain witness;     // longest F-alternating chain (bounds the coD side)
  AltChain co_witness;  // longest complement-alternating chain (bounds the D side)
};

// Level from alternating chains of both patterns.
LevelReport chain_level(const Family& f);

// Level by enumerating increasing upset sequences (k <= 4). Searches levels
// 1..max_level (0 means k+1, which always suffices); ResourceBound if F
// is not found.
LevelReport brute_force_level(const Family& f, unsigned max_level = 0);

// Bitmap over all 2^(2^k) families: bit F set iff F is a D_n set. k <= 4.
const std::vector<std::uint64_t>& difference_class(int k, unsigned n);
bool in_difference_class(const Family& f, unsigned n);

enum class TransformMode { IntersectOpen, UnionDisjoint };

// IntersectOpen: sequence for D(seq_a) & L. UnionDisjoint: sequence for
// D(seq_c) | D(seq_a), requiring D(seq_c) <= L and L & D(seq_a) empty.
DiffSequence lemma_transformers(const DiffSequence& seq_a, const Family& open_l, TransformMode mode,
                                const std::optional<DiffSequence>& seq_c = std::nullopt);

}  // namespace wadge
