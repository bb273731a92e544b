#pragma once

// Bit-parallel kernels shared by the periodic-set algebra and the family
// sweeps. Every kernel has a scalar reference in wadge::simd::scalar; wider
// variants are picked at runtime from the detected instruction set.

#include <cstdint>
#include <span>
#include <string_view>

namespace wadge::simd {

using Word = std::uint64_t;

enum class Level { Scalar, Avx2 };

std::string_view level_name(Level level) noexcept;

// Best level supported by the running CPU.
Level detected_level() noexcept;

// Level used by the dispatching entry points below.
Level active_level() noexcept;

// Select a level; requests above detected_level() are clamped. Returns the
// level actually installed.
Level set_active_level(Level level) noexcept;

struct KernelTable {
  void (*and_words)(const Word*, const Word*, Word*, std::size_t);
  void (*or_words)(const Word*, const Word*, Word*, std::size_t);
  void (*andnot_words)(const Word*, const Word*, Word*, std::size_t);
  void (*not_words)(const Word*, Word*, std::size_t);
  bool (*any_words)(const Word*, std::size_t);
  bool (*equal_words)(const Word*, const Word*, std::size_t);
  std::uint64_t (*popcount_words)(const Word*, std::size_t);
  void (*batch_is_upset)(int, const Word*, std::uint8_t*, std::size_t);
  void (*batch_upward_closure)(int, const Word*, Word*, std::size_t);
};

const KernelTable& kernels(Level level) noexcept;

// out[i] = a[i] & b[i]; out may alias a or b.
void and_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out);
void or_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out);
// out[i] = a[i] & ~b[i]
void andnot_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out);
void not_words(std::span<const Word> a, std::span<Word> out);
bool any_words(std::span<const Word> a);
bool equal_words(std::span<const Word> a, std::span<const Word> b);
std::uint64_t popcount_words(std::span<const Word> a);

// Families over P({0..k-1}), k <= 6, packed one family per 64-bit word
// (bit p set iff point p is a member).
void batch_is_upset(int k, std::span<const Word> families, std::span<std::uint8_t> out);
void batch_upward_closure(int k, std::span<const Word> families, std::span<Word> out);

namespace scalar {
extern const KernelTable table;
}
namespace avx2 {
// Null entries when the translation unit was built without AVX2 support.
extern const KernelTable table;
bool compiled() noexcept;
}

// Masks of the points lacking atom i, for i < 6.
inline constexpr Word kAtomAbsentMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace wadge::simd
