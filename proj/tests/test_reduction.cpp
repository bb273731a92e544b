#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <set>

#include "support.hpp"
#include "wadgelab/constructions.hpp"
#include "wadgelab/error.hpp"
#include "wadgelab/oracle.hpp"
#include "wadgelab/reduction.hpp"

using namespace wadge;
using testing_support::Gen;

namespace {

Family fam(int k, std::initializer_list<Point> pts) { return Family::from_points(k, pts); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

// Plain enumeration: is there any admissible map reducing a to b?
bool exists_by_enumeration(const Family& a, const Family& b, SearchConstraint c) {
  for (const auto& f : all_monotone_maps(a.atoms(), b.atoms()))
    if (c.admits(f) && check_reduction(f, a, b)) return true;
  return false;
}

}  // namespace

TEST(Reduction, CheckExamples) {
  EXPECT_TRUE(check_reduction(MonotoneMap::identity(2), fam(2, {0b01}), fam(2, {0b01})));
  const MonotoneMap swap = MonotoneMap::from_permutation({1, 0});
  EXPECT_TRUE(check_reduction(swap, fam(2, {0b01, 0b11}), fam(2, {0b10, 0b11})));
  EXPECT_FALSE(check_reduction(MonotoneMap::constant(2, 2, 0b11), fam(2, {0b01}), Family::whole(2)));
  EXPECT_EQ(kind_of([&] { check_reduction(MonotoneMap::identity(2), Family(3), Family(2)); }),
            ErrorKind::ShapeMismatch);
}

TEST(Reduction, NonMonotoneTablesAreRejected) {
  EXPECT_THROW(MonotoneMap(1, 1, {1, 0}), Error);
  EXPECT_THROW(MonotoneMap(1, 1, {0}), Error);
}

TEST(Reduction, SearchExamples) {
  EXPECT_FALSE(search_reduction(fam(2, {0b01}), fam(2, {0b00}), SearchConstraint::any()));
  const auto id = search_reduction(fam(2, {0b01, 0b11}), fam(2, {0b01, 0b11}), SearchConstraint::one_to_one());
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, MonotoneMap::identity(2));
}

TEST(Reduction, TruncatedTrioSeparatesOneToOneFromBounded) {
  const auto t = counterexample_trio_truncated(4);
  EXPECT_FALSE(search_reduction(t.o2, t.o1, SearchConstraint::one_to_one()));
  const auto w = search_reduction(t.o2, t.o1, SearchConstraint::bounded(4));
  ASSERT_TRUE(w);
  EXPECT_TRUE(check_reduction(*w, t.o2, t.o1));
  EXPECT_LE(w->max_preimage(), 4u);
  EXPECT_TRUE(check_reduction(t.f, t.o2, t.o1));
}

TEST(Reduction, NodeBudgetIsReported) {
  SearchOptions tiny;
  tiny.max_nodes = 3;
  const auto t = counterexample_trio_truncated(4);
  EXPECT_EQ(kind_of([&] { search_reduction(t.o2, t.o1, SearchConstraint::bounded(4), tiny); }),
            ErrorKind::ResourceBound);
}

TEST(Reduction, ConstraintParsing) {
  EXPECT_EQ(SearchConstraint::parse("any").mode, SearchConstraint::Mode::Any);
  EXPECT_EQ(SearchConstraint::parse("1to1").mode, SearchConstraint::Mode::OneToOne);
  const auto b = SearchConstraint::parse("fto1:4");
  EXPECT_EQ(b.mode, SearchConstraint::Mode::BoundedPreimage);
  EXPECT_EQ(b.bound, 4u);
  EXPECT_EQ(b.to_string(), "fto1:4");
  EXPECT_THROW(SearchConstraint::parse("fto1:0"), Error);
  EXPECT_THROW(SearchConstraint::parse("sideways"), Error);
}

TEST(Reduction, MonotoneMapCounts) {
  // Monotone self-maps of the chain 0 < 1, and of P_2 into P_1 (= 6 monotone maps of a square into a chain).
  EXPECT_EQ(all_monotone_maps(1, 1).size(), 3u);
  EXPECT_EQ(all_monotone_maps(2, 1).size(), 6u);
  EXPECT_EQ(all_monotone_maps(0, 2).size(), 4u);
}

TEST(Reduction, HardnessFromChainExamples) {
  const DiffSequence one{2, {basic_open(FiniteLattice(2), 0b01)}};
  const Family h = fam(2, {0b01});
  const MonotoneMap f = hardness_reduction_from_chain(AltChain{{0b01, 0b00}}, h, one);
  EXPECT_EQ(f.table(), (std::vector<Point>{0b00, 0b01, 0b00, 0b01}));
  EXPECT_TRUE(check_reduction(f, evaluate_difference(one), h));

  const MonotoneMap c = hardness_reduction_from_chain(AltChain{{0b11}}, h, DiffSequence{2, {}});
  EXPECT_TRUE(check_reduction(c, Family(2), h));

  const DiffSequence two{3, {basic_open(FiniteLattice(3), 0b011), basic_open(FiniteLattice(3), 0b001)}};
  const MonotoneMap g = hardness_reduction_from_chain(AltChain{{0b111, 0b001, 0b000}}, fam(3, {0b001}), two);
  EXPECT_TRUE(check_reduction(g, evaluate_difference(two), fam(3, {0b001})));

  EXPECT_EQ(kind_of([&] { hardness_reduction_from_chain(AltChain{{0b11, 0b00}}, h, one); }),
            ErrorKind::InvalidWitness);
}

TEST(Reduction, UniversalityExamples) {
  const auto r = universal_from_complete(FiniteLattice(2), fam(2, {0b01}), 1);
  EXPECT_TRUE(r.complete);
  EXPECT_FALSE(universal_from_complete(FiniteLattice(2), Family(2), 1).complete);
  const auto s = universal_from_complete(FiniteLattice(1), fam(1, {0b1}), 1);
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.slices.size(), 3u);
  EXPECT_EQ(kind_of([] { universal_from_complete(FiniteLattice(4), Family(4), 1); }), ErrorKind::ResourceBound);
}

TEST(Reduction, AutomorphismExamples) {
  EXPECT_EQ(automorphism_decomposition(MonotoneMap::identity(3)), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(automorphism_decomposition(MonotoneMap::from_permutation({1, 0})), (std::vector<std::uint32_t>{1, 0}));
  EXPECT_FALSE(automorphism_decomposition(MonotoneMap::constant(2, 2, 0)));
}

TEST(Reduction, CompleteFamilyWithoutInjectiveReductions) {
  const auto c = complete_not_one_to_one_finite(3, 2);
  const Family d1 = Family::whole(3) - fam(3, {0});
  EXPECT_TRUE(in_difference_class(d1, 1));
  EXPECT_FALSE(search_reduction(d1, c.h, SearchConstraint::one_to_one()));
  EXPECT_TRUE(search_reduction(d1, c.h, SearchConstraint::any()));
}

// ---- scattered chains ----

TEST(Scattered, SpecialChainIsScattered) {
  const auto sc = make_scattered_chain(special_chain(2).elements);
  EXPECT_NO_THROW(validate_scattered(sc));
  EXPECT_EQ(sc.alpha(), 2u);
  EXPECT_EQ(kind_of([] { make_scattered_chain({UPSet::naturals(), UPSet::at_least(1)}); }), ErrorKind::NotScattered);
  EXPECT_EQ(kind_of([] { make_scattered_chain({UPSet::make_ap(0, 2), UPSet::naturals()}); }), ErrorKind::InvalidChain);
}

TEST(Scattered, OneToOneReductionExamples) {
  const SpecialChain s = special_chain(2);
  GeneratedSequence seq{{{FiniteSet{0}}, {FiniteSet{1}}}};
  const OneToOneReduction g = one_to_one_reduction_from_scattered(make_scattered_chain(s.elements), seq);

  const auto bottom = g.apply(UPSet::empty(), 64);
  EXPECT_EQ(g.tau(UPSet::empty()), 2u);
  EXPECT_TRUE(bottom.value.is_subset_of(s.elements[2]));
  EXPECT_TRUE(s.family(bottom.value, 64).is_out());

  const UPSet z1 = UPSet::finite({2}), z2 = UPSet::finite({3});
  EXPECT_EQ(g.tau(z1), g.tau(z2));
  EXPECT_NE(g.apply(z1, 64).value, g.apply(z2, 64).value);

  EXPECT_EQ(g.tau(UPSet::naturals()), 0u);
  EXPECT_TRUE(s.family(g.apply(UPSet::naturals(), 64).value, 64).is_out());  // 0 ~ 2
  EXPECT_TRUE(s.family(g.apply(UPSet::finite({1}), 64).value, 64).is_in());

  EXPECT_THROW(one_to_one_reduction_from_scattered(make_scattered_chain(s.elements), GeneratedSequence{{{}}}),
               Error);
}

TEST(Scattered, ChainImageExamples) {
  const auto elems = special_chain(2).elements;
  const auto same = chain_image_transform(identity_map(), elems);
  EXPECT_TRUE(same.exact);
  EXPECT_EQ(same.chain.elements, elems);

  const auto dropped = chain_image_transform(drop_zero_map(), elems);
  for (std::size_t b = 0; b < elems.size(); ++b)
    EXPECT_EQ(dropped.chain.elements[b], elems[b] - UPSet::finite({0}));

  EXPECT_EQ(kind_of([&] { chain_image_transform(constant_map(UPSet::naturals()), elems); }),
            ErrorKind::NotScattered);
}

// ---- properties ----

TEST(ReductionProperty, SearchIsSoundAndComplete) {
  Gen g(51);
  const SearchConstraint modes[] = {SearchConstraint::any(), SearchConstraint::one_to_one(),
                                    SearchConstraint::bounded(2)};
  for (int i = 0; i < 300; ++i) {
    const int j = static_cast<int>(g.range(1, 3)), k = static_cast<int>(g.range(1, 3));
    const Family a = testing_support::random_family(g, j), b = testing_support::random_family(g, k);
    const SearchConstraint c = modes[g.below(3)];
    const auto found = search_reduction(a, b, c);
    if (found) {
      EXPECT_TRUE(check_reduction(*found, a, b));
      EXPECT_TRUE(c.admits(*found));
      for (const Family& u : all_upsets(FiniteLattice(k))) EXPECT_TRUE(is_upset(found->preimage(u)));
    }
    EXPECT_EQ(found.has_value(), exists_by_enumeration(a, b, c)) << a.to_string() << " -> " << b.to_string();
  }
}

TEST(ReductionProperty, WitnessDoesNotDependOnThreads) {
  Gen g(52);
  SearchOptions one, four;
  one.threads = 1;
  four.threads = 4;
  for (int i = 0; i < 60; ++i) {
    const Family a = testing_support::random_family(g, 3), b = testing_support::random_family(g, 3);
    EXPECT_EQ(search_reduction(a, b, SearchConstraint::any(), one),
              search_reduction(a, b, SearchConstraint::any(), four));
  }
}

TEST(ReductionProperty, HardnessEquivalenceOnP2) {
  const auto sweep = hardness_sweep(2, 3);
  EXPECT_EQ(sweep.cases.size(), 16u * 3u);
  EXPECT_EQ(sweep.disagreements(), 0u);
}

TEST(ReductionProperty, ChainReductionsAreReductions) {
  Gen g(53);
  int built = 0;
  for (int i = 0; i < 400; ++i) {
    const int k = static_cast<int>(g.range(1, 3));
    const Family h = testing_support::random_family(g, k);
    const auto longest = longest_alternating_chain(h);
    if (longest.length == 0) continue;
    const std::size_t n = g.below(longest.length);
    AltChain c;
    c.elements.assign(longest.witness.elements.end() - static_cast<std::ptrdiff_t>(n + 1),
                      longest.witness.elements.end());
    const auto seq = testing_support::random_diff_sequence(g, static_cast<int>(g.range(1, 3)), n);
    const MonotoneMap f = hardness_reduction_from_chain(c, h, seq);
    EXPECT_TRUE(f.is_monotone());
    EXPECT_TRUE(check_reduction(f, evaluate_difference(seq), h));
    ++built;
  }
  EXPECT_GT(built, 200);
}

TEST(ReductionProperty, AutomorphismsAreAtomPermutations) {
  for (int k = 0; k <= 3; ++k) {
    std::size_t bijections = 0;
    for (const auto& f : all_monotone_maps(k, k)) {
      std::vector<Point> inv(f.table().size());
      std::set<Point> image(f.table().begin(), f.table().end());
      if (image.size() != f.table().size()) {
        EXPECT_FALSE(automorphism_decomposition(f));
        continue;
      }
      for (Point p = 0; p < inv.size(); ++p) inv[f(p)] = p;
      bool inverse_monotone = true;
      for (Point p = 0; p < inv.size(); ++p)
        for (Point q = 0; q < inv.size(); ++q)
          if (point_subset(p, q) && !point_subset(inv[p], inv[q])) inverse_monotone = false;
      const auto perm = automorphism_decomposition(f);
      EXPECT_EQ(perm.has_value(), inverse_monotone);
      if (perm) {
        EXPECT_EQ(MonotoneMap::from_permutation(*perm), f);
        ++bijections;
      }
    }
    std::size_t fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    EXPECT_EQ(bijections, fact);
  }
}

TEST(ReductionProperty, OneToOneReductionIsInjectiveAndCorrect) {
  Gen g(54);
  const SpecialChain s = special_chain(3);
  for (int trial = 0; trial < 20; ++trial) {
    GeneratedSequence seq;
    for (int b = 0; b < 3; ++b) {
      std::vector<FiniteSet> gens;
      for (std::uint64_t m = g.range(1, 2); m > 0; --m)
        gens.push_back(testing_support::random_finite(g, 6, 0.4).elements_below(6));
      seq.generators.push_back(gens);
    }
    // Make the generated upsets decrease: each later generator also extends the earlier ones.
    for (int b = 1; b < 3; ++b)
      for (auto& gen : seq.generators[b])
        for (const auto& prev : seq.generators[b - 1]) {
          FiniteSet merged;
          std::set_union(gen.begin(), gen.end(), prev.begin(), prev.end(), std::back_inserter(merged));
          gen = merged;
        }
    const OneToOneReduction red = one_to_one_reduction_from_scattered(make_scattered_chain(s.elements), seq);
    std::vector<UPSet> outputs;
    for (std::uint64_t z = 0; z < 64; ++z) {
      FiniteSet bits;
      for (std::uint64_t i = 0; i < 6; ++i)
        if ((z >> i) & 1) bits.push_back(i);
      const UPSet x = UPSet::finite(bits);
      const auto out = red.apply(x, 256);
      EXPECT_TRUE(out.exact);
      for (const UPSet& prev : outputs) EXPECT_NE(prev, out.value);
      outputs.push_back(out.value);
      const TriBool member = s.family(out.value, 256);
      ASSERT_TRUE(member.decided());
      EXPECT_EQ(member.is_in(), seq.in_difference_set(x));
    }
  }
}
