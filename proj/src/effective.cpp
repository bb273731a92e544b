#include "wadgelab/effective.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "wadgelab/error.hpp"

namespace wadge {
namespace {

bool subset_of(const FiniteSet& a, const UPSet& x) {
  return std::all_of(a.begin(), a.end(), [&x](std::uint64_t v) { return x.contains(v); });
}

enum class SideStatus { Witnessed, Refuted, Open };

// Is some enumerated set contained in X within `depth` pulls, or provably none?
SideStatus side_status(const SetEnumerator& e, const UPSet& x, std::uint64_t depth) {
  std::uint64_t limit = depth;
  if (e.length()) limit = std::min(limit, *e.length());
  for (std::uint64_t p = 0; p < limit; ++p) {
    const auto s = e.at(p);
    if (s && subset_of(*s, x)) return SideStatus::Witnessed;
  }
  if (e.length() && *e.length() <= depth) return SideStatus::Refuted;
  if (e.graded() && x.is_finite()) {
    const auto m = x.max_element();
    // Sets inside X have all elements <= m, so they sit at positions <= m.
    if (!m || *m < depth) return SideStatus::Refuted;
  }
  return SideStatus::Open;
}

}  // namespace

TriBool TriBool::negate() const {
  switch (value) {
    case Truth::In: return out();
    case Truth::Out: return in();
    case Truth::Unknown: return *this;
  }
  return *this;
}

std::string to_string(const TriBool& t) {
  switch (t.value) {
    case Truth::In: return "in";
    case Truth::Out: return "out";
    case Truth::Unknown: return "unknown(" + std::to_string(t.depth) + ")";
  }
  return "unknown";
}

EffectiveMap::EffectiveMap(std::string name, Generator g, Closure exact,
                           std::optional<std::uint64_t> support)
    : name_(std::move(name)), g_(std::move(g)), exact_(std::move(exact)), support_(support) {}

UPSet EffectiveMap::exact(const UPSet& x) const {
  if (!exact_) throw Error(ErrorKind::InvalidInput, "map '" + name_ + "' has no exact image");
  return exact_(x);
}

Approximation apply_effective_map(const EffectiveMap& f, const UPSet& x, std::uint64_t depth) {
  const FiniteSet a = x.elements_below(depth);
  const NatEnumerator e = f.generate(a);
  std::uint64_t limit = depth;
  if (e.length()) limit = std::min(limit, *e.length());
  FiniteSet out;
  for (std::uint64_t p = 0; p < limit; ++p)
    if (const auto v = e.at(p)) out.push_back(*v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return {UPSet::finite(out), f.support().has_value() && depth >= *f.support()};
}

EffectiveMap identity_map() {
  return EffectiveMap(
      "identity", [](const FiniteSet& a) { return NatEnumerator::of_list(a); },
      [](const UPSet& x) { return x; });
}

EffectiveMap constant_map(const UPSet& value) {
  std::optional<std::uint64_t> support;
  if (value.is_finite()) support = value.max_element().value_or(0) + 1;
  return EffectiveMap(
      "constant",
      [value](const FiniteSet&) {
        return NatEnumerator([value](std::uint64_t p) -> std::optional<std::uint64_t> {
          if (value.contains(p)) return p;
          return std::nullopt;
        });
      },
      [value](const UPSet&) { return value; }, support);
}

EffectiveMap drop_zero_map() {
  return EffectiveMap(
      "drop-zero",
      [](const FiniteSet& a) {
        return NatEnumerator(
            [a](std::uint64_t p) -> std::optional<std::uint64_t> {
              if (p < a.size() && a[p] != 0) return a[p];
              return std::nullopt;
            },
            a.size());
      },
      [](const UPSet& x) { return x - UPSet::finite({0}); });
}

std::uint64_t finite_set_code(const FiniteSet& a) {
  std::uint64_t code = 0;
  for (auto v : a) {
    if (v >= 64) throw Error(ErrorKind::BoundExceeded, "finite set code needs elements < 64");
    code |= std::uint64_t{1} << v;
  }
  return code;
}

FiniteSet decode_finite_set(std::uint64_t code) {
  FiniteSet out;
  for (; code; code &= code - 1) out.push_back(std::countr_zero(code));
  return out;
}

std::uint64_t pair_index(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t z) {
  std::uint64_t w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const std::uint64_t b = z - w * (w + 1) / 2;
  return {w - b, b};
}

UPSet embed_phi(const FinitePresentation& pres, std::size_t element) {
  if (element >= pres.size()) throw Error(ErrorKind::InvalidInput, "element outside the presentation");
  return UPSet::finite(decode_finite_set(pres.down_mask(element)));
}

UPSet canonical_code_set(const UPSet& x, std::uint64_t bound) {
  if (bound > UPSet::kMaxThreshold) throw Error(ErrorKind::BoundExceeded, "code bound too large");
  FiniteSet out;
  for (std::uint64_t c = 0; c < bound; ++c)
    if (subset_of(decode_finite_set(c), x)) out.push_back(c);
  return UPSet::finite(out);
}

TriBool phi_image_check(const FinitePresentation& pres, const UPSet& z, std::uint64_t depth) {
  const std::size_t n = pres.size();
  if (depth == 0) return TriBool::unknown(0);
  // Indices outside the basis never occur in an image.
  if (z.next_element(n)) return TriBool::out();
  const std::size_t lim = static_cast<std::size_t>(std::min<std::uint64_t>(depth, n));
  std::uint64_t zmask = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (z.contains(i)) zmask |= std::uint64_t{1} << i;
  const std::uint64_t lim_mask = lim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lim) - 1;
  // downward closure: j in Z and (i, j) in R imply i in Z
  for (std::size_t j = 0; j < lim; ++j)
    if (((zmask >> j) & 1) && (pres.down_mask(j) & lim_mask & ~zmask)) return TriBool::out();
  // directedness: i, j in Z have a common upper bound k in Z
  for (std::size_t i = 0; i < lim; ++i) {
    if (!((zmask >> i) & 1)) continue;
    for (std::size_t j = i; j < lim; ++j) {
      if (!((zmask >> j) & 1)) continue;
      if ((pres.up_mask(i) & pres.up_mask(j) & zmask & lim_mask) == 0 && lim == n) return TriBool::out();
    }
  }
  if (lim < n) return TriBool::unknown(depth);
  // phi(x) always contains x itself.
  if (zmask == 0) return TriBool::out();
  return TriBool::in();
}

bool UniversalOpen::contains(const UPSet& index_set, std::size_t element) const {
  if (element >= pres_.size()) throw Error(ErrorKind::InvalidInput, "element outside the presentation");
  return (slice(index_set) >> element) & 1;
}

std::uint64_t UniversalOpen::slice(const UPSet& index_set) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < pres_.size(); ++i)
    if (index_set.contains(i)) out |= pres_.up_mask(i);
  return out;
}

IndexRelation topo_to_domain_effective(const IndexRelation& t, const FinitePresentation& src) {
  IndexRelation s;
  for (auto [k, j] : t) {
    if (k >= src.size()) throw Error(ErrorKind::InvalidInput, "relation index outside the presentation");
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src.way_below(k, i)) s.emplace_back(i, j);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool s2_membership(const UPSet& x) {
  // Past the threshold the pattern of (2n, 2n+1) repeats with period <= 2p.
  const std::uint64_t bound = x.threshold() / 2 + 2 * x.period() + 1;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (x.contains(2 * n) && !x.contains(2 * n + 1)) return true;
  return false;
}

Sigma2Family Sigma2Family::from_lists(std::vector<std::vector<FiniteSet>> a,
                                      std::vector<std::vector<FiniteSet>> b) {
  for (auto* side : {&a, &b})
    for (auto& sets : *side)
      for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
      }
  Sigma2Family f;
  auto make = [](std::vector<std::vector<FiniteSet>> lists) {
    return [lists = std::move(lists)](std::uint64_t n) {
      if (n < lists.size()) return SetEnumerator::of_list(lists[n]);
      return SetEnumerator();
    };
  };
  f.index_bound = std::max(a.size(), b.size());
  f.a = make(a);
  f.b = make(b);
  f.lists.emplace(std::move(a), std::move(b));
  return f;
}

Sigma2Family Sigma2Family::fin_style() {
  Sigma2Family f;
  f.a = [](std::uint64_t) { return SetEnumerator::of_list({FiniteSet{}}); };
  f.b = [](std::uint64_t n) {
    return SetEnumerator([n](std::uint64_t p) -> std::optional<FiniteSet> { return FiniteSet{n + p}; },
                         std::nullopt, true);
  };
  // An infinite X meets every [n, oo), so every piece rejects it.
  f.tail_refuter = [](const UPSet& x, std::uint64_t) { return x.is_infinite(); };
  return f;
}

TriBool sigma2_membership(const Sigma2Family& family, const UPSet& x, std::uint64_t depth) {
  if (depth == 0) return TriBool::unknown(0);
  const std::uint64_t pieces = family.index_bound ? std::min(depth, *family.index_bound) : depth;
  bool all_out = true;
  for (std::uint64_t n = 0; n < pieces; ++n) {
    const SideStatus pos = side_status(family.a(n), x, depth);
    const SideStatus neg = side_status(family.b(n), x, depth);
    if (pos == SideStatus::Witnessed && neg == SideStatus::Refuted) return TriBool::in();
    if (!(pos == SideStatus::Refuted || neg == SideStatus::Witnessed)) all_out = false;
  }
  if (all_out) {
    if (family.index_bound && pieces == *family.index_bound) return TriBool::out();
    if (family.tail_refuter && family.tail_refuter(x, depth)) return TriBool::out();
  }
  return TriBool::unknown(depth);
}

EffectiveMap s2_reduction(const Sigma2Family& family) {
  EffectiveMap::Generator g = [family](const FiniteSet& c) {
    return NatEnumerator([family, c](std::uint64_t p) -> std::optional<std::uint64_t> {
      const auto [n, j] = unpair_index(p);
      if (family.index_bound && n >= *family.index_bound) return std::nullopt;
      const SetEnumerator e = j % 2 ? family.b(n) : family.a(n);
      const auto s = e.at(j / 2);
      if (!s) return std::nullopt;
      for (auto v : *s)
        if (!std::binary_search(c.begin(), c.end(), v)) return std::nullopt;
      return 2 * n + j % 2;
    });
  };
  if (!family.lists) return EffectiveMap("s2-reduction", g);
  const auto& [a, b] = *family.lists;
  std::uint64_t longest = 0, top = 0;
  for (const auto* side : {&a, &b})
    for (const auto& sets : *side) {
      longest = std::max<std::uint64_t>(longest, sets.size());
      for (const auto& s : sets)
        if (!s.empty()) top = std::max(top, s.back() + 1);
    }
  const std::uint64_t n = *family.index_bound;
  const std::uint64_t support = std::max<std::uint64_t>(
      {top, n && longest ? pair_index(n - 1, 2 * longest - 1) + 1 : 0, 1});
  auto exact = [a = a, b = b](const UPSet& x) {
    FiniteSet out;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      auto hit = [&x](const std::vector<std::vector<FiniteSet>>& side, std::size_t k) {
        if (k >= side.size()) return false;
        return std::any_of(side[k].begin(), side[k].end(), [&x](const FiniteSet& s) { return subset_of(s, x); });
      };
      if (hit(a, i)) out.push_back(2 * i);
      if (hit(b, i)) out.push_back(2 * i + 1);
    }
    return UPSet::finite(out);
  };
  return EffectiveMap("s2-reduction", g, exact, support);
}

}  // namespace wadge
