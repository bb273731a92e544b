#pragma once

// Packed bit-vector helpers shared by the UPSet and family code.

#include <bit>
#include <cstdint>
#include <vector>

namespace wadge::bits {

using Word = std::uint64_t;

inline std::size_t words_for(std::uint64_t nbits) { return static_cast<std::size_t>((nbits + 63) / 64); }

inline Word low_mask(unsigned m) { return m >= 64 ? ~Word{0} : (Word{1} << m) - 1; }

inline bool get(const std::vector<Word>& v, std::uint64_t n) { return (v[n / 64] >> (n % 64)) & 1; }

inline void set(std::vector<Word>& v, std::uint64_t n) { v[n / 64] |= Word{1} << (n % 64); }

// Zero every bit at position >= nbits and size the vector to words_for(nbits).
inline void truncate(std::vector<Word>& v, std::uint64_t nbits) {
  v.resize(words_for(nbits), 0);
  if (nbits % 64 && !v.empty()) v.back() &= low_mask(nbits % 64);
}

// 64 bits starting at bit `off`; v must have a readable word after the one
// holding `off`.
inline Word extract(const std::vector<Word>& v, std::uint64_t off) {
  const std::size_t w = off / 64;
  const unsigned s = off % 64;
  Word lo = v[w] >> s;
  if (s) lo |= v[w + 1] << (64 - s);
  return lo;
}

}  // namespace wadge::bits
