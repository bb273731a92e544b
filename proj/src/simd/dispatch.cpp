#include <atomic>
#include <cstdlib>
#include <cstring>

#include "wadgelab/error.hpp"
#include "wadgelab/simd.hpp"

namespace wadge::simd {
namespace {

Level probe() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Level::Avx2;
#endif
  return Level::Scalar;
}

Level initial_level() noexcept {
  Level best = probe();
  // WADGELAB_SIMD=scalar forces the reference kernels.
  if (const char* env = std::getenv("WADGELAB_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Level::Scalar;
  return best;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels(initial_level())};
  return table;
}

const KernelTable& current() { return *active_table().load(std::memory_order_relaxed); }

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
  if (a != b || out < a) throw Error(ErrorKind::ShapeMismatch, "word spans differ in length");
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  return level == Level::Avx2 ? "avx2" : "scalar";
}

Level detected_level() noexcept {
  static const Level level = probe();
  return level;
}

const KernelTable& kernels(Level level) noexcept {
  if (level == Level::Avx2 && avx2::compiled()) return avx2::table;
  return scalar::table;
}

Level active_level() noexcept {
  return &current() == &avx2::table ? Level::Avx2 : Level::Scalar;
}

Level set_active_level(Level level) noexcept {
  if (level == Level::Avx2 && detected_level() != Level::Avx2) level = Level::Scalar;
  active_table().store(&kernels(level), std::memory_order_relaxed);
  return level;
}

void and_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  check_sizes(a.size(), b.size(), out.size());
  current().and_words(a.data(), b.data(), out.data(), a.size());
}

void or_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  check_sizes(a.size(), b.size(), out.size());
  current().or_words(a.data(), b.data(), out.data(), a.size());
}

void andnot_words(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  check_sizes(a.size(), b.size(), out.size());
  current().andnot_words(a.data(), b.data(), out.data(), a.size());
}

void not_words(std::span<const Word> a, std::span<Word> out) {
  check_sizes(a.size(), a.size(), out.size());
  current().not_words(a.data(), out.data(), a.size());
}

bool any_words(std::span<const Word> a) { return current().any_words(a.data(), a.size()); }

bool equal_words(std::span<const Word> a, std::span<const Word> b) {
  return a.size() == b.size() && current().equal_words(a.data(), b.data(), a.size());
}

std::uint64_t popcount_words(std::span<const Word> a) {
  return current().popcount_words(a.data(), a.size());
}

void batch_is_upset(int k, std::span<const Word> families, std::span<std::uint8_t> out) {
  if (k < 0 || k > 6) throw Error(ErrorKind::InvalidInput, "packed families need k <= 6");
  if (out.size() < families.size()) throw Error(ErrorKind::ShapeMismatch, "output span too short");
  current().batch_is_upset(k, families.data(), out.data(), families.size());
}

void batch_upward_closure(int k, std::span<const Word> families, std::span<Word> out) {
  if (k < 0 || k > 6) throw Error(ErrorKind::InvalidInput, "packed families need k <= 6");
  if (out.size() < families.size()) throw Error(ErrorKind::ShapeMismatch, "output span too short");
  current().batch_upward_closure(k, families.data(), out.data(), families.size());
}

}  // namespace wadge::simd
