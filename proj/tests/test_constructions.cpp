#include <gtest/gtest.h>

#include "support.hpp"
#include "wadgelab/constructions.hpp"
#include "wadgelab/error.hpp"

using namespace wadge;
using testing_support::Gen;

namespace {

Ordinal w(std::uint64_t q, std::uint64_t r = 0) { return Ordinal::omega_times(q, r); }
Ordinal nat(std::uint64_t n) { return Ordinal::natural(n); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

bool in(const NamedFamily& f, const UPSet& x, std::uint64_t depth = 256) { return f(x, depth).is_in(); }
bool out(const NamedFamily& f, const UPSet& x, std::uint64_t depth = 256) { return f(x, depth).is_out(); }

// Random sets built from odd codes, evens and a little noise.
UPSet random_coded_set(Gen& g, const Ordinal& alpha) {
  UPSet x;
  const std::uint64_t q_max = alpha.coefficient(1) + (alpha.coefficient(0) > 0);
  for (int i = static_cast<int>(g.below(4)); i > 0; --i) {
    const std::uint64_t q = g.below(q_max), r = g.below(6);
    if (w(q, r) < alpha) x = x | UPSet::finite({odd_code(w(q, r))});
  }
  if (g.coin(0.5)) x = x | UPSet::finite({1});
  if (g.coin(0.3)) x = x | UPSet::make_ap(2 * g.below(5), 2 * g.range(1, 4));
  if (g.coin(0.3)) x = x | testing_support::random_finite(g, 12, 0.2);
  return x;
}

}  // namespace

// ---- special chains ----

TEST(SpecialChain, FiniteExamples) {
  const SpecialChain one = special_chain(1);
  const UPSet bottom = UPSet::make_ap(2, 3);
  EXPECT_EQ(one.elements.back(), bottom);
  EXPECT_TRUE(one.elements[1].is_subset_of(one.elements[0]));
  EXPECT_TRUE((one.elements[0] - one.elements[1]).is_infinite());
  EXPECT_TRUE(one.elements[0].contains(one.a(nat(0))));
  EXPECT_TRUE(out(one.family, bottom));

  const SpecialChain two = special_chain(2);
  EXPECT_TRUE(in(two.family, two.elements[1]));
  EXPECT_TRUE(out(two.family, two.elements[0]));
  EXPECT_TRUE(out(two.family, two.elements[2]));
}

TEST(SpecialChain, TransfiniteBlocksAreDisjoint) {
  const Ordinal alpha = w(2, 1);
  const SpecialChain s = special_chain(alpha, {nat(0), nat(3), w(1), w(1, 2), w(2)});
  EXPECT_EQ(s.indices.back(), alpha);
  const std::vector<Ordinal> ds{nat(0), nat(1), nat(5), w(1), w(1, 4), w(2)};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_TRUE(s.block(ds[i]).is_infinite());
    EXPECT_FALSE(s.block(ds[i]).contains(s.a(ds[i])));
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      EXPECT_FALSE(s.block(ds[i]).intersects(s.block(ds[j])));
      EXPECT_NE(s.a(ds[i]), s.a(ds[j]));
    }
  }
  EXPECT_EQ(s.element(alpha), UPSet::make_ap(2, 3));
}

// ---- trio and duality ----

TEST(Trio, Examples) {
  const auto t = counterexample_trio();
  EXPECT_TRUE(out(t.o1, UPSet::empty()));
  EXPECT_TRUE(in(t.o1, UPSet::finite({7})));
  const UPSet x = UPSet::finite({0, 5});
  EXPECT_EQ(t.f.exact(x), UPSet::finite({5}));
  EXPECT_TRUE(in(t.o2, x));
  EXPECT_TRUE(in(t.o1, t.f.exact(x)));
  EXPECT_EQ(t.g.exact(UPSet::finite({0})), UPSet::empty());
  EXPECT_TRUE(out(t.o3, UPSet::finite({0})));
  EXPECT_TRUE(out(t.o1, t.g.exact(UPSet::finite({0}))));
}

TEST(Trio, TruncationMatchesTheInfiniteFamilies) {
  const auto t = counterexample_trio_truncated(4);
  const auto inf = counterexample_trio();
  for (Point p = 0; p < 16; ++p) {
    FiniteSet s;
    for (std::uint64_t i = 0; i < 4; ++i)
      if ((p >> i) & 1) s.push_back(i);
    const UPSet x = UPSet::finite(s);
    EXPECT_EQ(t.o1.contains(p), in(inf.o1, x));
    EXPECT_EQ(t.o2.contains(p), in(inf.o2, x));
    EXPECT_EQ(t.o3.contains(p), in(inf.o3, x));
  }
  EXPECT_EQ((Family::whole(4) - t.o1).count(), 1u);
  EXPECT_EQ((Family::whole(4) - t.o2).count(), 2u);
}

TEST(Duality, Examples) {
  const auto d = duality_failure_witness();
  EXPECT_TRUE(in(d.y, UPSet::finite({3, 8, 100})));
  EXPECT_TRUE(out(d.x, UPSet::make_ap(1, 2)));
  EXPECT_TRUE(in(d.x, UPSet::make_ap(1, 2) | UPSet::finite({0})));
  const auto rep = d.check(identity_map(), 32);
  EXPECT_TRUE(rep.contradiction);
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.failing_point, "{0}|2N+1");
  EXPECT_EQ(d.check(constant_map(UPSet::empty()), 32).failing_point, "2N+1");
}

// ---- trees ----

TEST(Trees, LabelsAndFamilies) {
  const BTree root = BTree::root_only();
  EXPECT_EQ(root.xi({}), 0u);
  const auto f = bt_family(root);
  EXPECT_TRUE(out(f.b, UPSet::finite({0})));
  EXPECT_TRUE(in(f.b, UPSet::finite({5})));
  EXPECT_TRUE(in(f.b, UPSet::make_ap(0, 4)));

  const BTree t({{}, {0}});
  EXPECT_EQ(t.xi({0}), 2u);
  EXPECT_EQ(t.e({0}), (FiniteSet{0, 2}));
  const auto g = bt_family(t);
  EXPECT_TRUE(in(g.y, UPSet::finite({0, 2})));
  EXPECT_TRUE(out(g.y, UPSet::finite({0})));
  EXPECT_TRUE(in(g.z, UPSet::finite({0, 2})));
  EXPECT_TRUE(in(g.z, UPSet::finite({4})));
  EXPECT_TRUE(out(g.z, UPSet::finite({0})));

  EXPECT_EQ(kind_of([] { BTree(std::vector<Sequence>{Sequence{0}}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { BTree(std::vector<Sequence>{Sequence{}, Sequence{0, 1}}); }), ErrorKind::InvalidInput);
}

// ---- Y_{alpha,beta} ----

TEST(YAlphaBeta, OddCoding) {
  EXPECT_EQ(odd_code(nat(0)), 3u);
  EXPECT_EQ(odd_code(nat(1)), 7u);
  EXPECT_EQ(odd_code(w(1)), 5u);
  EXPECT_EQ(odd_code(w(1, 1)), 13u);
  EXPECT_EQ(odd_code_index(13), w(1, 1));
  EXPECT_FALSE(odd_code_index(4));
  EXPECT_FALSE(odd_code_index(1));
}

TEST(YAlphaBeta, Examples) {
  const BTree t({{}, {0}, {1}});
  const auto odd_beta = y_alpha_beta(w(3), nat(1), t);
  const UPSet x = UPSet::finite({1, odd_code(nat(0))});
  EXPECT_TRUE(in(odd_beta.a_beta, x));  // least index 0, parity differs from beta = 1
  EXPECT_FALSE(odd_beta.proper_hypothesis);

  const auto y = y_alpha_beta(w(3), w(1), t);
  EXPECT_TRUE(out(y.a_beta, x));
  for (const UPSet& e : {UPSet::finite({0, 2}), UPSet::finite({0}), UPSet::finite({0, 4}), UPSet::make_ap(0, 2)}) {
    const TriBool a = y.y(e, 256), b = y.y_alpha(e, 256);
    ASSERT_TRUE(a.decided() && b.decided());
    EXPECT_EQ(a.value, b.value);
  }

  const EffectiveMap f = y_alpha_beta_map(w(3), w(1), w(1, 1));
  EXPECT_EQ(f.exact(x), UPSet::finite({1, odd_code(nat(1)), odd_code(w(1, 1))}));

  EXPECT_EQ(kind_of([&] { y_alpha_beta(w(3), w(3), t); }), ErrorKind::HypothesisFailed);
  EXPECT_EQ(kind_of([&] { y_alpha_beta(Ordinal::omega_power(2), w(1), t); }), ErrorKind::HypothesisFailed);
  EXPECT_EQ(kind_of([] { y_alpha_beta_map(w(3), w(2), w(1)); }), ErrorKind::HypothesisFailed);
}

TEST(YAlphaBeta, ChainAlternates) {
  const auto y = y_alpha_beta(w(3), w(1), BTree::root_only());
  ASSERT_EQ(y.chain.size(), y.chain_indices.size());
  for (std::size_t i = 0; i + 1 < y.chain.size(); ++i) {
    EXPECT_TRUE(y.chain[i + 1].is_subset_of(y.chain[i]));
    EXPECT_NE(y.chain[i + 1], y.chain[i]);
  }
  for (std::size_t i = 0; i < y.chain.size(); ++i) {
    const TriBool m = y.y(y.chain[i], 256);
    ASSERT_TRUE(m.decided());
    EXPECT_EQ(m.is_in(), !same_parity(y.chain_indices[i], y.beta)) << y.chain_indices[i].to_string();
  }
}

// ---- the R chain ----

TEST(RChain, Examples) {
  const auto single = r_chain({{Rational::make(0), 0, true}});
  EXPECT_EQ(single.eps, std::vector<int>{0});
  EXPECT_TRUE(s2_membership(single.at({false, Rational::make(0), 0, 0})));
  const UPSet below = single.at({true, {}, 0, 0});
  EXPECT_TRUE(below.is_empty());
  EXPECT_FALSE(s2_membership(below));
  for (std::int64_t z = -3; z < 3; ++z) {
    const UPSet a = single.at({false, Rational::make(0), z, 0}), b = single.at({false, Rational::make(0), z + 1, 0});
    EXPECT_TRUE(a.is_subset_of(b));
    EXPECT_NE(a, b);
  }
}

TEST(RChain, RejectsNonAlternations) {
  const Rational q = Rational::make(1, 2);
  EXPECT_EQ(kind_of([&] { r_chain({{q, 0, true}, {q, 1, true}}); }), ErrorKind::InvalidPattern);
  EXPECT_EQ(kind_of([&] { r_chain({{q, 0, true}, {q, 2, false}}); }), ErrorKind::InvalidPattern);
  EXPECT_EQ(r_chain({{q, 0, true}, {q, 0, true}}).points.size(), 3u);  // repeats are harmless
}

TEST(RChain, EnumeratedRationals) {
  const auto r = enumerated_rationals(7);
  const std::vector<Rational> expect{Rational::make(0),     Rational::make(1),  Rational::make(-1),
                                     Rational::make(1, 2), Rational::make(-1, 2), Rational::make(2),
                                     Rational::make(-2)};
  EXPECT_EQ(r, expect);
  const auto many = enumerated_rationals(200);
  for (std::size_t i = 0; i < many.size(); ++i)
    for (std::size_t j = i + 1; j < many.size(); ++j) ASSERT_NE(many[i], many[j]);
}

// ---- other constructions ----

TEST(IncreasingS2Chain, Examples) {
  const auto c = increasing_s2_chain(3);
  EXPECT_EQ(c[0], UPSet::finite({0}));
  EXPECT_EQ(c[1], UPSet::finite({0, 1}));
  EXPECT_TRUE(s2_membership(c[0]));
  EXPECT_FALSE(s2_membership(c[1]));
  EXPECT_TRUE(c[0].is_subset_of(c[1]) && c[1].is_subset_of(c[2]) && c[0] != c[1] && c[1] != c[2]);
}

TEST(CompleteNotOneToOne, Examples) {
  for (std::uint64_t n : {1u, 2u, 3u}) {
    const auto c = complete_not_one_to_one(n);
    EXPECT_TRUE(out(c.h, UPSet::empty()));
    EXPECT_TRUE(c.chain.back().is_empty());
    EXPECT_EQ(c.parts.size(), n);
    const std::uint64_t a0 = *c.parts[0].min_element();
    EXPECT_EQ(in(c.h, UPSet::finite({a0})), n % 2 == 1);
    for (std::size_t b = 0; b < c.chain.size(); ++b) {
      const TriBool m = c.h(c.chain[b]);
      ASSERT_TRUE(m.decided());
      EXPECT_EQ(m.is_in(), b % 2 != n % 2);
    }
  }
  // The parts partition N.
  const auto c = complete_not_one_to_one(4);
  UPSet all;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < c.parts.size(); ++j) EXPECT_FALSE(c.parts[i].intersects(c.parts[j]));
    all = all | c.parts[i];
  }
  EXPECT_EQ(all, UPSet::naturals());
}

TEST(CompleteNotOneToOne, FinitePort) {
  const auto c = complete_not_one_to_one_finite(3, 2);
  EXPECT_EQ(c.seq.length(), 2u);
  EXPECT_EQ(c.h, evaluate_difference(c.seq));
  EXPECT_TRUE(is_alternating_chain(c.h, c.chain));
  EXPECT_EQ(c.chain.elements.back(), 0u);
  EXPECT_THROW(complete_not_one_to_one_finite(2, 3), Error);
}

TEST(FinObstruction, Examples) {
  EXPECT_TRUE(fin_obstruction(FiniteLattice(2), Family::from_points(2, {0})));
  EXPECT_FALSE(fin_obstruction(FiniteLattice(2), basic_open(FiniteLattice(2), 0b01)));
  EXPECT_TRUE(fin_obstruction(FiniteLattice(2), Family(2)));
  EXPECT_EQ(kind_of([] { fin_obstruction(FiniteLattice(3), Family(2)); }), ErrorKind::ShapeMismatch);
}

TEST(AltFamilyFromChain, Examples) {
  const AltChain p2{{0b11, 0b01, 0b00}};
  const auto s = alt_family_from_chain(p2, 2);
  EXPECT_EQ(s.length(), 2u);
  EXPECT_TRUE(is_special_chain(evaluate_difference(s), p2));

  const auto e = alt_family_from_chain(AltChain{{0b10}}, 2);
  EXPECT_EQ(e.length(), 0u);
  EXPECT_TRUE(evaluate_difference(e).empty());

  const AltChain p3{{0b111, 0b011, 0b001, 0b000}};
  const auto t = alt_family_from_chain(p3, 3);
  const Family d = evaluate_difference(t);
  EXPECT_TRUE(is_special_chain(d, p3));
  EXPECT_EQ(chain_level(d).level, 3u);

  EXPECT_EQ(kind_of([] { alt_family_from_chain(AltChain{{0b01, 0b01}}, 2); }), ErrorKind::InvalidChain);
}

// ---- properties ----

TEST(ConstructionProperty, SpecialChainIntervalsMatchTheFamily) {
  Gen g(71);
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const SpecialChain s = special_chain(n);
    for (std::size_t b = 0; b + 1 < s.elements.size(); ++b) {
      const UPSet diff = s.elements[b] - s.elements[b + 1];
      for (int t = 0; t < 30; ++t) {
        // A point of the interval [X_{b+1}, X_b]: X_{b+1} plus a random part of the difference.
        const UPSet x = s.elements[b + 1] | (diff & testing_support::random_upset(g, 30, 6));
        const TriBool m = s.family(x, 256);
        ASSERT_TRUE(m.decided());
        // Only a_b itself moves a set off the lower end of its interval.
        const std::size_t level = x.contains(s.a(Ordinal::natural(b))) ? b : b + 1;
        EXPECT_EQ(m.is_in(), level < n && level % 2 != n % 2);
        const UPSet with_a = x | UPSet::finite({s.a(Ordinal::natural(b))});
        EXPECT_EQ(s.family(with_a, 256).is_in(), b % 2 != n % 2);
      }
    }
  }
}

TEST(ConstructionProperty, IncreasingS2ChainsAlternate) {
  for (std::size_t m = 1; m <= 64; ++m) {
    const auto c = increasing_s2_chain(m);
    ASSERT_EQ(c.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_EQ(s2_membership(c[j]), j % 2 == 0);
      if (j) { EXPECT_TRUE(c[j - 1].is_subset_of(c[j]) && c[j - 1] != c[j]); }
    }
  }
}

TEST(ConstructionProperty, RChainFollowsItsPattern) {
  const auto chain = r_chain(standard_pattern(8, -4, 4));
  ASSERT_GT(chain.points.size(), 8u * 9u);
  for (std::size_t i = 0; i < chain.points.size(); ++i) {
    const auto& p = chain.points[i];
    EXPECT_EQ(s2_membership(p.set), p.expected) << i;
    EXPECT_EQ(chain.at(p.index), p.set);
    if (i) {
      const auto& prev = chain.points[i - 1];
      EXPECT_TRUE(chain.less(prev.index, p.index));
      EXPECT_FALSE(chain.less(p.index, prev.index));
      EXPECT_TRUE(prev.set.is_subset_of(p.set));
      EXPECT_NE(prev.set, p.set);
    }
  }
}

TEST(ConstructionProperty, BtYIsOutsideB) {
  Gen g(72);
  for (int i = 0; i < 40; ++i) {
    std::vector<Sequence> nodes{{}};
    for (int j = 0; j < static_cast<int>(g.below(8)); ++j) {
      Sequence s = nodes[g.below(nodes.size())];
      s.push_back(g.below(3));
      if (std::find(nodes.begin(), nodes.end(), s) == nodes.end()) nodes.push_back(s);
    }
    const BTree t(nodes);
    const auto f = bt_family(t);
    for (const auto& s : t.nodes()) {
      const UPSet e = UPSet::finite(t.e(s));
      EXPECT_TRUE(out(f.b, e));
      EXPECT_EQ(in(f.y, e), s.size() % 2 == 1);
    }
    std::vector<std::uint64_t> labels;
    for (const auto& s : t.nodes()) labels.push_back(t.xi(s));
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(std::adjacent_find(labels.begin(), labels.end()), labels.end());
    for (auto v : labels) EXPECT_EQ(v % 2, 0u);
  }
}

TEST(ConstructionProperty, YMembersAreParityPure) {
  Gen g(73);
  const auto y = y_alpha_beta(w(3), w(1), BTree({{}, {0}, {1}, {0, 0}}));
  int decided = 0;
  for (int i = 0; i < 400; ++i) {
    const UPSet x = random_coded_set(g, y.alpha);
    const TriBool m = y.y(x, 256);
    if (!m.decided()) continue;
    ++decided;
    if (m.is_in()) { EXPECT_TRUE(x.is_subset_of(UPSet::make_ap(0, 2)) || x.is_subset_of(UPSet::make_ap(1, 2))); }
  }
  EXPECT_GT(decided, 300);
}

TEST(ConstructionProperty, YMapsTransferMembership) {
  Gen g(74);
  const BTree t({{}, {0}, {1}, {0, 0}});
  const Ordinal alpha = w(3);
  const std::pair<Ordinal, Ordinal> cases[] = {{w(1), w(2)}, {w(1), w(1, 1)}, {w(1, 1), w(2, 4)}};
  for (const auto& [beta, gamma] : cases) {
    const auto yb = y_alpha_beta(alpha, beta, t), yg = y_alpha_beta(alpha, gamma, t);
    const EffectiveMap f = y_alpha_beta_map(alpha, beta, gamma);
    int decided = 0;
    for (int i = 0; i < 200; ++i) {
      const UPSet x = random_coded_set(g, alpha);
      const UPSet fx = f.exact(x);
      const TriBool a = yb.y(x, 256), b = yg.y(fx, 256);
      if (a.decided() && b.decided()) {
        ++decided;
        EXPECT_EQ(a.value, b.value) << beta.to_string() << "->" << gamma.to_string();
      }
      const TriBool za = yb.z(x, 256), zb = yg.z(fx, 256);
      if (za.decided() && zb.decided()) { EXPECT_EQ(za.value, zb.value); }
      const UPSet y = x | random_coded_set(g, alpha);
      EXPECT_TRUE(fx.is_subset_of(f.exact(y)));
    }
    EXPECT_GE(decided, 150);
  }
}

TEST(ConstructionProperty, AltFamiliesMakeEveryMaximalChainSpecial) {
  for (int k = 1; k <= 3; ++k) {
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    do {
      AltChain c{{static_cast<Point>((1u << k) - 1)}};
      for (int a : order) c.elements.push_back(c.elements.back() & ~(Point{1} << a));
      const Family d = evaluate_difference(alt_family_from_chain(c, k));
      EXPECT_TRUE(is_special_chain(d, c));
      EXPECT_EQ(longest_alternating_chain(d).length, static_cast<std::size_t>(k + 1));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}
