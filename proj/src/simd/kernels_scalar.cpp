#include <bit>

#include "wadgelab/simd.hpp"

namespace wadge::simd::scalar {
namespace {

void and_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

void not_w(const Word* a, Word* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ~a[i];
}

bool any_w(const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return true;
  return false;
}

bool equal_w(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::uint64_t popcount_w(const Word* a, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

void is_upset_w(int k, const Word* fam, std::uint8_t* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    Word f = fam[j];
    Word bad = 0;
    for (int i = 0; i < k; ++i) bad |= ((f & kAtomAbsentMask[i]) << (1u << i)) & ~f;
    out[j] = bad == 0;
  }
}

void closure_w(int k, const Word* fam, Word* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    Word f = fam[j];
    for (int i = 0; i < k; ++i) f |= (f & kAtomAbsentMask[i]) << (1u << i);
    out[j] = f;
  }
}

}  // namespace

const KernelTable table = {and_w,   or_w,       andnot_w,   not_w,    any_w,
                           equal_w, popcount_w, is_upset_w, closure_w};

}  // namespace wadge::simd::scalar
