#include <gtest/gtest.h>

#include "support.hpp"
#include "wadgelab/error.hpp"
#include "wadgelab/ordinal.hpp"

using namespace wadge;
using testing_support::Gen;

namespace {

Ordinal w(std::uint64_t q, std::uint64_t r = 0) { return Ordinal::omega_times(q, r); }

Ordinal random_ordinal(Gen& g) {
  std::vector<CnfTerm> terms;
  for (int e = 2; e >= 0; --e)
    if (g.coin(0.5)) terms.push_back({static_cast<std::uint32_t>(e), g.range(1, 4)});
  return Ordinal::from_terms(terms);
}

}  // namespace

TEST(Ordinal, CompareOrdersByLeadingTerm) {
  EXPECT_LT(Ordinal::natural(1000), w(1));
  EXPECT_LT(w(2), w(2, 1));
  EXPECT_LT(w(5, 7), Ordinal::omega_power(2));
  EXPECT_EQ(compare(w(1, 3), w(1, 3)), std::strong_ordering::equal);
  EXPECT_TRUE(Ordinal().is_zero());
}

TEST(Ordinal, FromTermsRejectsBadForms) {
  EXPECT_THROW(Ordinal::from_terms({{0, 1}, {1, 1}}), Error);   // ascending exponents
  EXPECT_THROW(Ordinal::from_terms({{1, 0}}), Error);           // zero coefficient
  EXPECT_THROW(Ordinal::from_terms({{3, 1}}), Error);           // exponent bound
  EXPECT_NO_THROW(Ordinal::from_terms({{3, 1}}, 4));
}

TEST(Ordinal, AdditionAbsorbsLowerTerms) {
  EXPECT_EQ(add(Ordinal::natural(1), w(1)), w(1));
  EXPECT_EQ(add(w(1), Ordinal::natural(1)), w(1, 1));
  EXPECT_EQ(add(w(1), Ordinal::omega_power(2)), Ordinal::omega_power(2));
  EXPECT_EQ(add(w(2, 3), w(1, 4)), w(3, 4));
  EXPECT_EQ(add(Ordinal::natural(2), Ordinal::natural(3)), Ordinal::natural(5));
}

TEST(Ordinal, AdditionPastBoundThrows) {
  try {
    add(Ordinal::omega_power(2), Ordinal::from_terms({{3, 1}}, 4));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundExceeded);
  }
}

TEST(Ordinal, ParityFollowsFiniteTerm) {
  EXPECT_EQ(w(1).parity(), Parity::Even);
  EXPECT_EQ(w(1, 1).parity(), Parity::Odd);
  EXPECT_EQ(Ordinal::natural(5).parity(), Parity::Odd);
  EXPECT_EQ(Ordinal().parity(), Parity::Even);
  EXPECT_TRUE(same_parity(w(1), w(2)));
  EXPECT_FALSE(same_parity(w(1), w(2, 3)));
}

TEST(Ordinal, Absorption) {
  EXPECT_TRUE(absorbs(Ordinal::natural(1), w(1)));
  EXPECT_TRUE(absorbs(w(1), Ordinal::omega_power(2)));
  EXPECT_FALSE(absorbs(w(1), w(3)));
  EXPECT_FALSE(absorbs(Ordinal::natural(1), Ordinal::natural(4)));
  EXPECT_TRUE(absorbs(Ordinal(), Ordinal::natural(4)));
}

TEST(Ordinal, Printing) {
  EXPECT_EQ(w(2, 1).to_string(), "w*2+1");
  EXPECT_EQ(Ordinal::omega_power(2).to_string(), "w^2");
  EXPECT_EQ(Ordinal().to_string(), "0");
}

TEST(OrdinalProperty, SumIsAssociativeAndRightMonotone) {
  Gen g(1);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = random_ordinal(g), b = random_ordinal(g), c = random_ordinal(g);
    EXPECT_EQ(add(add(a, b), c), add(a, add(b, c)));
    if (b < c) { EXPECT_LT(add(a, b), add(a, c)); }
    EXPECT_GE(add(a, b), b);
    EXPECT_GE(add(a, b), a);
    EXPECT_EQ(absorbs(a, b), add(a, b) == b);
  }
}

TEST(OrdinalProperty, CompareIsATotalOrder) {
  Gen g(2);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = random_ordinal(g), b = random_ordinal(g);
    const auto ab = compare(a, b), ba = compare(b, a);
    EXPECT_EQ(ab == std::strong_ordering::less, ba == std::strong_ordering::greater);
    EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
  }
}
