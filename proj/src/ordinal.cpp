#include "wadgelab/ordinal.hpp"

#include <limits>

#include "wadgelab/error.hpp"

namespace wadge {
namespace {

void check_exponent(std::uint32_t exponent, std::uint32_t bound) {
  if (exponent >= bound)
    throw Error(ErrorKind::BoundExceeded,
                "ordinal exponent " + std::to_string(exponent) + " outside bound omega^" +
                    std::to_string(bound));
}

std::uint64_t checked_sum(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw Error(ErrorKind::BoundExceeded, "ordinal coefficient overflow");
  return a + b;
}

}  // namespace

Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal o;
  if (n) o.terms_.push_back({0, n});
  return o;
}

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient,
                             std::uint32_t bound) {
  check_exponent(exponent, bound);
  Ordinal o;
  if (coefficient) o.terms_.push_back({exponent, coefficient});
  return o;
}

Ordinal Ordinal::omega_times(std::uint64_t q, std::uint64_t r) {
  Ordinal o;
  if (q) o.terms_.push_back({1, q});
  if (r) o.terms_.push_back({0, r});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms, std::uint32_t bound) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    check_exponent(terms[i].exponent, bound);
    if (terms[i].coefficient == 0)
      throw Error(ErrorKind::InvalidInput, "CNF coefficient must be positive");
    if (i && terms[i].exponent >= terms[i - 1].exponent)
      throw Error(ErrorKind::InvalidInput, "CNF exponents must strictly decrease");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

std::uint64_t Ordinal::coefficient(std::uint32_t exponent) const {
  for (const auto& t : terms_)
    if (t.exponent == exponent) return t.coefficient;
  return 0;
}

Parity Ordinal::parity() const { return finite_part() % 2 ? Parity::Odd : Parity::Even; }

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += t.exponent == 1 ? "w" : "w^" + std::to_string(t.exponent);
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  const auto& a = terms_;
  const auto& b = other.terms_;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].exponent != b[i].exponent) return a[i].exponent <=> b[i].exponent;
    if (a[i].coefficient != b[i].coefficient) return a[i].coefficient <=> b[i].coefficient;
  }
  return a.size() <=> b.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b, std::uint32_t bound) {
  for (const auto& t : a.terms()) check_exponent(t.exponent, bound);
  for (const auto& t : b.terms()) check_exponent(t.exponent, bound);
  if (b.is_zero()) return a;
  const std::uint32_t lead = b.terms().front().exponent;
  std::vector<CnfTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else if (t.exponent == lead) {
      out.push_back({lead, checked_sum(t.coefficient, b.terms().front().coefficient)});
      break;
    } else {
      break;
    }
  }
  if (out.empty() || out.back().exponent != lead) out.push_back(b.terms().front());
  out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
  return Ordinal::from_terms(std::move(out), bound);
}

bool absorbs(const Ordinal& b, const Ordinal& a) {
  std::uint32_t bound = Ordinal::kDefaultExponentBound;
  for (const auto& t : a.terms()) bound = std::max(bound, t.exponent + 1);
  for (const auto& t : b.terms()) bound = std::max(bound, t.exponent + 1);
  return add(b, a, bound) == a;
}

}  // namespace wadge
