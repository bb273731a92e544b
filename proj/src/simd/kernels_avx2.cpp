// Compiled with -mavx2 when the compiler supports it; only reached after the
// runtime CPU check in dispatch.cpp.
#include "wadgelab/simd.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

#include <bit>

namespace wadge::simd::avx2 {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void or_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_w(const Word* a, const Word* b, Word* out, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) = ~x & y
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

void not_w(const Word* a, Word* out, std::size_t n) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, _mm256_xor_si256(load(a + i), ones));
  for (; i < n; ++i) out[i] = ~a[i];
}

bool any_w(const Word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    if (!_mm256_testz_si256(v, v)) return true;
  }
  for (; i < n; ++i)
    if (a[i]) return true;
  return false;
}

bool equal_w(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// No vector popcount in AVX2; nibble lookup with vpshufb and sad accumulate.
std::uint64_t popcount_w(const Word* a, std::size_t n) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low));
    __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

inline __m256i shift_by_atom(__m256i v, int i) {
  switch (i) {
    case 0: return _mm256_slli_epi64(v, 1);
    case 1: return _mm256_slli_epi64(v, 2);
    case 2: return _mm256_slli_epi64(v, 4);
    case 3: return _mm256_slli_epi64(v, 8);
    case 4: return _mm256_slli_epi64(v, 16);
    default: return _mm256_slli_epi64(v, 32);
  }
}

void is_upset_w(int k, const Word* fam, std::uint8_t* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i f = load(fam + j);
    __m256i bad = _mm256_setzero_si256();
    for (int i = 0; i < k; ++i) {
      __m256i m = _mm256_set1_epi64x(static_cast<long long>(kAtomAbsentMask[i]));
      bad = _mm256_or_si256(bad, _mm256_andnot_si256(f, shift_by_atom(_mm256_and_si256(f, m), i)));
    }
    __m256i zero = _mm256_cmpeq_epi64(bad, _mm256_setzero_si256());
    int mask = _mm256_movemask_pd(_mm256_castsi256_pd(zero));
    for (int l = 0; l < 4; ++l) out[j + l] = (mask >> l) & 1;
  }
  if (j < n) scalar::table.batch_is_upset(k, fam + j, out + j, n - j);
}

void closure_w(int k, const Word* fam, Word* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i f = load(fam + j);
    for (int i = 0; i < k; ++i) {
      __m256i m = _mm256_set1_epi64x(static_cast<long long>(kAtomAbsentMask[i]));
      f = _mm256_or_si256(f, shift_by_atom(_mm256_and_si256(f, m), i));
    }
    store(out + j, f);
  }
  if (j < n) scalar::table.batch_upward_closure(k, fam + j, out + j, n - j);
}

}  // namespace

const KernelTable table = {and_w,   or_w,       andnot_w,   not_w,    any_w,
                           equal_w, popcount_w, is_upset_w, closure_w};

bool compiled() noexcept { return true; }

}  // namespace wadge::simd::avx2

#else

namespace wadge::simd::avx2 {
const KernelTable table = {};
bool compiled() noexcept { return false; }
}  // namespace wadge::simd::avx2

#endif
