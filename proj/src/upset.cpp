#include "wadgelab/upset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bits.hpp"
#include "wadgelab/error.hpp"
#include "wadgelab/simd.hpp"

namespace wadge {

using bits::Word;

namespace {

// p bits of `pattern` followed by their 64-bit wrap-around, plus a spare word.
std::vector<Word> with_wrap(const std::vector<Word>& pattern, std::uint64_t p) {
  std::vector<Word> ext(pattern.begin(), pattern.begin() + std::min(pattern.size(), bits::words_for(p)));
  bits::truncate(ext, p);
  ext.resize(bits::words_for(p + 64) + 1, 0);
  for (std::uint64_t i = 0; i < 64; ++i)
    if (bits::get(ext, i % p)) bits::set(ext, p + i);
  return ext;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool any_bits(const std::vector<Word>& v) { return simd::any_words(v); }

}  // namespace

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (q && b > cap / q)
    throw Error(ErrorKind::BoundExceeded, "common period exceeds " + std::to_string(cap));
  return q * b;
}

UPSet::UPSet() { cycle_ = with_wrap({0}, 1); }

UPSet UPSet::naturals() { return make_ap(0, 1); }

UPSet UPSet::finite(std::span<const std::uint64_t> elements) {
  std::uint64_t t = 0;
  for (auto e : elements) t = std::max(t, e + 1);
  if (t > kMaxThreshold) throw Error(ErrorKind::BoundExceeded, "finite set element too large");
  std::vector<Word> prefix(bits::words_for(t), 0);
  for (auto e : elements) bits::set(prefix, e);
  return from_bits(t, std::move(prefix), 1, {0});
}

UPSet UPSet::finite(std::initializer_list<std::uint64_t> elements) {
  return finite(std::span<const std::uint64_t>(elements.begin(), elements.size()));
}

UPSet UPSet::interval(std::uint64_t lo, std::uint64_t hi) {
  return tabulate(hi, 1, [lo, hi](std::uint64_t n) { return n >= lo && n < hi; });
}

UPSet UPSet::make_ap(std::uint64_t offset, std::uint64_t step) {
  if (step == 0) throw Error(ErrorKind::InvalidInput, "progression step must be positive");
  const std::uint64_t residue = offset % step;
  return from_parts(offset, {}, step, std::span<const std::uint64_t>(&residue, 1));
}

UPSet UPSet::at_least(std::uint64_t lo) {
  return tabulate(lo, 1, [lo](std::uint64_t n) { return n >= lo; });
}

UPSet UPSet::from_parts(std::uint64_t threshold, std::span<const std::uint64_t> explicit_elements,
                        std::uint64_t period, std::span<const std::uint64_t> residues) {
  if (period == 0) throw Error(ErrorKind::InvalidInput, "period must be positive");
  if (period > kMaxPeriod) throw Error(ErrorKind::BoundExceeded, "period too large");
  if (threshold > kMaxThreshold) throw Error(ErrorKind::BoundExceeded, "threshold too large");
  std::vector<Word> prefix(bits::words_for(threshold), 0);
  for (auto e : explicit_elements) {
    if (e >= threshold) throw Error(ErrorKind::InvalidInput, "explicit element not below threshold");
    bits::set(prefix, e);
  }
  std::vector<Word> cycle(bits::words_for(period), 0);
  for (auto r : residues) {
    if (r >= period) throw Error(ErrorKind::InvalidInput, "residue not below period");
    bits::set(cycle, r);
  }
  return from_bits(threshold, std::move(prefix), period, std::move(cycle));
}

UPSet UPSet::tabulate(std::uint64_t threshold, std::uint64_t period,
                      const std::function<bool(std::uint64_t)>& member) {
  if (period == 0) throw Error(ErrorKind::InvalidInput, "period must be positive");
  if (period > kMaxPeriod) throw Error(ErrorKind::BoundExceeded, "period too large");
  if (threshold > kMaxThreshold) throw Error(ErrorKind::BoundExceeded, "threshold too large");
  std::vector<Word> prefix(bits::words_for(threshold), 0);
  for (std::uint64_t n = 0; n < threshold; ++n)
    if (member(n)) bits::set(prefix, n);
  std::vector<Word> cycle(bits::words_for(period), 0);
  for (std::uint64_t n = threshold; n < threshold + period; ++n)
    if (member(n)) bits::set(cycle, n % period);
  return from_bits(threshold, std::move(prefix), period, std::move(cycle));
}

UPSet UPSet::from_bits(std::uint64_t threshold, std::vector<Word> prefix, std::uint64_t period,
                       std::vector<Word> cycle) {
  UPSet s;
  s.threshold_ = threshold;
  s.prefix_ = std::move(prefix);
  bits::truncate(s.prefix_, threshold);
  s.period_ = period;
  s.cycle_ = std::move(cycle);
  bits::truncate(s.cycle_, period);
  s.canonicalize();
  return s;
}

void UPSet::canonicalize() {
  for (std::uint64_t f : prime_factors(period_)) {
    while (period_ % f == 0) {
      const std::uint64_t q = period_ / f;
      const std::vector<Word> ext = with_wrap(cycle_, q);
      bool periodic = true;
      for (std::size_t w = 0; w < cycle_.size() && periodic; ++w) {
        Word expect = bits::extract(ext, (64 * w) % q);
        if (w + 1 == cycle_.size() && period_ % 64) expect &= bits::low_mask(period_ % 64);
        periodic = expect == cycle_[w];
      }
      if (!periodic) break;
      period_ = q;
      bits::truncate(cycle_, q);
    }
  }
  while (threshold_ > 0 &&
         bits::get(prefix_, threshold_ - 1) == bits::get(cycle_, (threshold_ - 1) % period_))
    --threshold_;
  bits::truncate(prefix_, threshold_);
  extend_cycle();
}

void UPSet::extend_cycle() { cycle_ = with_wrap(cycle_, period_); }

Word UPSet::cycle_word(std::uint64_t start) const { return bits::extract(cycle_, start % period_); }

bool UPSet::cycle_bit(std::uint64_t n) const { return bits::get(cycle_, n % period_); }

void UPSet::materialize(std::uint64_t t, std::uint64_t length, std::vector<Word>& prefix,
                        std::vector<Word>& cycle) const {
  prefix.assign(bits::words_for(t), 0);
  for (std::size_t w = 0; w < prefix.size(); ++w) {
    const std::uint64_t base = 64 * static_cast<std::uint64_t>(w);
    if (base + 64 <= threshold_) {
      prefix[w] = prefix_[w];
    } else if (base >= threshold_) {
      prefix[w] = cycle_word(base);
    } else {
      const Word m = bits::low_mask(static_cast<unsigned>(threshold_ - base));
      prefix[w] = (prefix_[w] & m) | (cycle_word(base) & ~m);
    }
  }
  bits::truncate(prefix, t);
  cycle.assign(bits::words_for(length), 0);
  for (std::size_t w = 0; w < cycle.size(); ++w) cycle[w] = cycle_word(64 * static_cast<std::uint64_t>(w));
  bits::truncate(cycle, length);
}

FiniteSet UPSet::explicit_elements() const {
  FiniteSet out;
  for (std::uint64_t n = 0; n < threshold_; ++n)
    if (bits::get(prefix_, n)) out.push_back(n);
  return out;
}

FiniteSet UPSet::residues() const {
  FiniteSet out;
  for (std::uint64_t r = 0; r < period_; ++r)
    if (bits::get(cycle_, r)) out.push_back(r);
  return out;
}

bool UPSet::contains(std::uint64_t n) const {
  return n < threshold_ ? bits::get(prefix_, n) : cycle_bit(n);
}

bool UPSet::is_empty() const { return !any_bits(prefix_) && !any_bits(cycle_); }

bool UPSet::is_infinite() const { return any_bits(cycle_); }

std::optional<std::uint64_t> UPSet::size() const {
  if (is_infinite()) return std::nullopt;
  return simd::popcount_words(prefix_);
}

std::optional<std::uint64_t> UPSet::next_element(std::uint64_t n) const {
  if (n < threshold_) {
    for (std::size_t w = n / 64; w < prefix_.size(); ++w) {
      Word x = prefix_[w];
      if (w == n / 64) x &= ~bits::low_mask(n % 64);
      if (x) return 64 * static_cast<std::uint64_t>(w) + std::countr_zero(x);
    }
    n = threshold_;
  }
  if (!is_infinite()) return std::nullopt;
  for (std::uint64_t start = n;; start += 64) {
    if (const Word x = cycle_word(start)) return start + std::countr_zero(x);
  }
}

std::optional<std::uint64_t> UPSet::min_element() const { return next_element(0); }

std::optional<std::uint64_t> UPSet::max_element() const {
  if (is_infinite()) return std::nullopt;
  for (std::size_t w = prefix_.size(); w-- > 0;)
    if (prefix_[w]) return 64 * static_cast<std::uint64_t>(w) + 63 - std::countl_zero(prefix_[w]);
  return std::nullopt;
}

FiniteSet UPSet::elements_below(std::uint64_t bound) const {
  FiniteSet out;
  for (auto x = next_element(0); x && *x < bound; x = next_element(*x + 1)) out.push_back(*x);
  return out;
}

UPSet UPSet::complement() const {
  std::vector<Word> prefix, cycle;
  materialize(threshold_, period_, prefix, cycle);
  simd::not_words(prefix, prefix);
  simd::not_words(cycle, cycle);
  return from_bits(threshold_, std::move(prefix), period_, std::move(cycle));
}

UPSet UPSet::combine(const UPSet& other, Op op) const {
  const std::uint64_t length = checked_lcm(period_, other.period_, kMaxPeriod);
  const std::uint64_t t = std::max(threshold_, other.threshold_);
  std::vector<Word> pa, ca, pb, cb;
  materialize(t, length, pa, ca);
  other.materialize(t, length, pb, cb);
  switch (op) {
    case Op::Union:
      simd::or_words(pa, pb, pa);
      simd::or_words(ca, cb, ca);
      break;
    case Op::Intersect:
      simd::and_words(pa, pb, pa);
      simd::and_words(ca, cb, ca);
      break;
    case Op::Difference:
      simd::andnot_words(pa, pb, pa);
      simd::andnot_words(ca, cb, ca);
      break;
  }
  return from_bits(t, std::move(pa), length, std::move(ca));
}

UPSet UPSet::unite(const UPSet& other) const { return combine(other, Op::Union); }
UPSet UPSet::intersect(const UPSet& other) const { return combine(other, Op::Intersect); }
UPSet UPSet::minus(const UPSet& other) const { return combine(other, Op::Difference); }
bool UPSet::is_subset_of(const UPSet& other) const { return minus(other).is_empty(); }
bool UPSet::intersects(const UPSet& other) const { return !intersect(other).is_empty(); }

UPSet UPSet::shifted(std::uint64_t i) const {
  if (i == 0) return *this;
  if (threshold_ + i > kMaxThreshold) throw Error(ErrorKind::BoundExceeded, "shift too large");
  const std::uint64_t t = threshold_ + i;
  std::vector<Word> prefix(bits::words_for(t), 0);
  for (std::uint64_t n = 0; n < threshold_; ++n)
    if (bits::get(prefix_, n)) bits::set(prefix, n + i);
  std::vector<Word> cycle(bits::words_for(period_), 0);
  const std::uint64_t back = period_ - i % period_;
  for (std::size_t w = 0; w < cycle.size(); ++w) cycle[w] = cycle_word(64 * static_cast<std::uint64_t>(w) + back);
  return from_bits(t, std::move(prefix), period_, std::move(cycle));
}

std::string UPSet::to_string() const {
  std::ostringstream out;
  auto list = [&out](const FiniteSet& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ']';
  };
  out << "explicit=";
  list(explicit_elements());
  out << " threshold=" << threshold_ << " period=" << period_ << " residues=";
  list(residues());
  return out.str();
}

bool UPSet::operator==(const UPSet& other) const {
  return threshold_ == other.threshold_ && period_ == other.period_ && prefix_ == other.prefix_ &&
         cycle_ == other.cycle_;
}

UPSet dyadic_partition(unsigned i) {
  if (i + 2 > 26) throw Error(ErrorKind::BoundExceeded, "dyadic index too large");
  return UPSet::make_ap(std::uint64_t{1} << (i + 1), std::uint64_t{1} << (i + 2));
}

UPSet enumerate_image(const UPSet& range, const UPSet& z) {
  if (!range.is_infinite()) throw Error(ErrorKind::InvalidInput, "enumeration range must be infinite");
  if (z.is_empty()) return UPSet::empty();
  const std::uint64_t k = range.residues().size();
  const std::uint64_t m0 = range.explicit_elements().size();
  const std::uint64_t cycle = checked_lcm(k, z.period(), UPSet::kMaxPeriod);
  const std::uint64_t n0 = std::max(m0, z.threshold());
  const std::uint64_t big_period = (cycle / k) * range.period();
  if (big_period > UPSet::kMaxPeriod) throw Error(ErrorKind::BoundExceeded, "image period too large");

  FiniteSet explicit_part, residues;
  std::uint64_t threshold = 0;
  std::uint64_t value = *range.min_element();
  for (std::uint64_t n = 0; n < n0 + cycle; ++n) {
    if (n == n0) threshold = value;
    if (z.contains(n)) {
      if (n < n0)
        explicit_part.push_back(value);
      else
        residues.push_back(value % big_period);
    }
    value = *range.next_element(value + 1);
  }
  std::sort(residues.begin(), residues.end());
  return UPSet::from_parts(threshold, explicit_part, big_period, residues);
}

std::uint64_t enumeration_index(const UPSet& range, std::uint64_t x) {
  if (!range.contains(x)) throw Error(ErrorKind::InvalidInput, "not a member of the range");
  std::uint64_t count = 0;
  const FiniteSet head = range.explicit_elements();
  count += std::lower_bound(head.begin(), head.end(), x) - head.begin();
  if (x <= range.threshold()) return count;
  const std::uint64_t span = x - range.threshold();
  const FiniteSet res = range.residues();
  count += (span / range.period()) * res.size();
  const std::uint64_t start = range.threshold() + (span / range.period()) * range.period();
  for (std::uint64_t n = start; n < x; ++n)
    if (range.contains(n)) ++count;
  return count;
}

}  // namespace wadge
