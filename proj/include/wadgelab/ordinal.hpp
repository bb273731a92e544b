#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace wadge {

struct CnfTerm {
  std::uint32_t exponent = 0;
  std::uint64_t coefficient = 1;

  friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

enum class Parity { Even, Odd };

// Ordinal below omega^E in Cantor normal form: omega^e1*c1 + ... with
// e1 > e2 > ... and every c >= 1. The empty term list is 0.
class Ordinal {
 public:
  static constexpr std::uint32_t kDefaultExponentBound = 3;

  Ordinal() = default;

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1,
                             std::uint32_t bound = kDefaultExponentBound);
  // omega*q + r
  static Ordinal omega_times(std::uint64_t q, std::uint64_t r = 0);
  // Validates ordering, coefficients and the exponent bound.
  static Ordinal from_terms(std::vector<CnfTerm> terms,
                            std::uint32_t bound = kDefaultExponentBound);

  const std::vector<CnfTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }
  bool is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0); }

  // Coefficient of omega^e, 0 if absent.
  std::uint64_t coefficient(std::uint32_t exponent) const;
  std::uint64_t finite_part() const { return coefficient(0); }
  Parity parity() const;

  std::string to_string() const;

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const { return terms_ == other.terms_; }

 private:
  std::vector<CnfTerm> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

// Ordinal sum a + b; throws BoundExceeded if the result needs an exponent
// >= bound or a coefficient overflows.
Ordinal add(const Ordinal& a, const Ordinal& b,
            std::uint32_t bound = Ordinal::kDefaultExponentBound);

inline Parity parity(const Ordinal& a) { return a.parity(); }
inline bool same_parity(const Ordinal& a, const Ordinal& b) { return a.parity() == b.parity(); }

// b + a == a
bool absorbs(const Ordinal& b, const Ordinal& a);

}  // namespace wadge
