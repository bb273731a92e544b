#include "wadgelab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "wadgelab/error.hpp"

namespace wadge {

namespace {

// Runs an exact predicate, turning resource errors into Unknown.
template <class F>
TriBool guarded(std::uint64_t depth, F&& f) {
  try {
    return TriBool::of(f());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BoundExceeded || e.kind() == ErrorKind::ResourceBound)
      return TriBool::unknown(depth);
    throw;
  }
}

NamedFamily exact_family(std::string name, std::vector<std::string> params,
                         std::function<bool(const UPSet&)> pred) {
  return {std::move(name), std::move(params),
          [pred = std::move(pred)](const UPSet& x, std::uint64_t depth) {
            return guarded(depth, [&] { return pred(x); });
          }};
}

FiniteSet elements_of(const UPSet& finite) {
  const auto top = finite.max_element();
  return top ? finite.elements_below(*top + 1) : FiniteSet{};
}

// A map given by an exact closure that sends finite sets to finite sets and
// is determined by its values on finite subsets.
EffectiveMap finitary_map(std::string name, std::function<UPSet(const UPSet&)> closure) {
  auto gen = [closure](const FiniteSet& a) {
    return NatEnumerator::of_list(elements_of(closure(UPSet::finite(a))));
  };
  return EffectiveMap(std::move(name), std::move(gen), std::move(closure));
}

// w*q + r parts of an ordinal below w^2.
struct WqR {
  std::uint64_t q = 0;
  std::uint64_t r = 0;
};

bool below_omega_squared(const Ordinal& a) {
  for (const auto& t : a.terms())
    if (t.exponent > 1) return false;
  return true;
}

WqR split(const Ordinal& a) {
  if (!below_omega_squared(a)) throw Error(ErrorKind::BoundExceeded, "ordinal must be below w^2");
  return {a.coefficient(1), a.finite_part()};
}

std::uint64_t pow2(std::uint64_t e) {
  if (e >= 63) throw Error(ErrorKind::BoundExceeded, "power of two too large");
  return std::uint64_t{1} << e;
}

const UPSet& evens() {
  static const UPSet s = UPSet::make_ap(0, 2);
  return s;
}

const UPSet& odds() {
  static const UPSet s = UPSet::make_ap(1, 2);
  return s;
}

}  // namespace

// ---- special chains ----

std::uint64_t SpecialChain::a(const Ordinal& delta) const {
  if (delta >= alpha) throw Error(ErrorKind::InvalidInput, "index must be below alpha");
  const auto [q, r] = split(delta);
  return 3 * (rows * r + q);
}

UPSet SpecialChain::block(const Ordinal& delta) const {
  if (delta >= alpha) throw Error(ErrorKind::InvalidInput, "index must be below alpha");
  const auto [q, r] = split(delta);
  return UPSet::make_ap(3 * (rows * pow2(r) + q) + 1, 3 * rows * pow2(r + 1));
}

UPSet SpecialChain::element(const Ordinal& beta) const {
  if (beta > alpha) throw Error(ErrorKind::InvalidInput, "index must be at most alpha");
  const auto [big_q, big_r] = split(alpha);
  const auto [q, r] = split(beta);
  UPSet x = UPSet::make_ap(2, 3);
  // Rows strictly inside the w*Q part: from column r on in row q, whole rows after.
  for (std::uint64_t row = q; row < big_q; ++row) {
    const std::uint64_t from = row == q ? r : 0;
    x = x | UPSet::make_ap(3 * (rows * from + row), 3 * rows);
    x = x | UPSet::make_ap(3 * (rows * pow2(from) + row) + 1, 3 * rows * pow2(from));
  }
  const std::uint64_t start = q == big_q ? r : 0;
  for (std::uint64_t col = start; col < big_r; ++col) {
    const Ordinal d = add(Ordinal::omega_times(big_q, 0), Ordinal::natural(col));
    x = x | UPSet::finite({a(d)}) | block(d);
  }
  return x;
}

namespace {

SpecialChain build_special(const Ordinal& alpha, std::vector<Ordinal> betas) {
  if (alpha.is_zero()) throw Error(ErrorKind::InvalidInput, "special chain needs alpha >= 1");
  const auto [big_q, big_r] = split(alpha);
  SpecialChain sc;
  sc.alpha = alpha;
  sc.rows = big_q + (big_r > 0 ? 1 : 0);
  betas.push_back(alpha);
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  for (const auto& b : betas)
    if (b > alpha) throw Error(ErrorKind::InvalidInput, "materialized index above alpha");
  sc.indices = betas;
  for (const auto& b : betas) sc.elements.push_back(sc.element(b));

  const std::uint64_t rows = sc.rows;
  const bool alpha_odd = alpha.parity() == Parity::Odd;
  sc.family = exact_family(
      "A", {alpha.to_string()}, [rows, big_q, big_r, alpha_odd](const UPSet& x) {
        // Least delta = w*q + r with a_delta in X: first row, then column.
        for (std::uint64_t q = 0; q < rows; ++q) {
          UPSet hits = x & UPSet::make_ap(3 * q, 3 * rows);
          if (q == big_q) hits = hits & UPSet::interval(0, 3 * (rows * big_r + q));
          if (const auto m = hits.min_element()) {
            const std::uint64_t r = (*m / 3 - q) / rows;
            return ((r % 2) == 1) != alpha_odd;
          }
        }
        return false;
      });
  return sc;
}

}  // namespace

SpecialChain special_chain(std::uint64_t n) {
  std::vector<Ordinal> betas;
  for (std::uint64_t b = 0; b <= n; ++b) betas.push_back(Ordinal::natural(b));
  return build_special(Ordinal::natural(n), std::move(betas));
}

SpecialChain special_chain(const Ordinal& alpha, std::vector<Ordinal> betas) {
  return build_special(alpha, std::move(betas));
}

// ---- one-to-one vs finite-to-one ----

CounterexampleTrio counterexample_trio() {
  const UPSet zero = UPSet::finite({0});
  auto o1 = exact_family("O1", {}, [](const UPSet& x) { return !x.is_empty(); });
  auto o2 = exact_family("O2", {}, [zero](const UPSet& x) { return !(x - zero).is_empty(); });
  auto o3 = exact_family("O3", {}, [zero](const UPSet& x) {
    return x.contains(0) && !(x - zero).is_empty();
  });
  auto g = finitary_map("g", [zero](const UPSet& x) {
    return x.contains(0) && !(x - zero).is_empty() ? x : UPSet::empty();
  });
  return {std::move(o1), std::move(o2), std::move(o3), drop_zero_map(), std::move(g)};
}

TrioTruncation counterexample_trio_truncated(int k) {
  if (k < 2 || k > FiniteLattice::kMaxAtoms)
    throw Error(ErrorKind::InvalidInput, "trio truncation needs 2 <= k <= 6");
  const FiniteLattice lat(k);
  const Point rest = lat.top() & ~Point{1};
  Family o1(k), o2(k), o3(k);
  std::vector<Point> ft(lat.size()), gt(lat.size());
  for (Point p = 0; p < lat.size(); ++p) {
    if (p != 0) o1 = o1.with(p);
    if (p & rest) o2 = o2.with(p);
    if ((p & 1) && (p & rest)) o3 = o3.with(p);
    ft[p] = p & ~Point{1};
    gt[p] = (p & 1) && (p & rest) ? p : 0;
  }
  return {o1, o2, o3, MonotoneMap(k, k, std::move(ft)), MonotoneMap(k, k, std::move(gt))};
}

// ---- duality failure ----

DualityReport DualityWitness::check(const EffectiveMap& h, std::uint64_t depth) const {
  const UPSet p = odds();
  const UPSet q = p | UPSet::finite({0});
  DualityReport rep;
  bool p_infinite = false, q_infinite = false, monotone = true;
  if (h.has_exact()) {
    const UPSet hp = h.exact(p), hq = h.exact(q);
    p_infinite = hp.is_infinite();
    q_infinite = hq.is_infinite();
    monotone = hp.is_subset_of(hq);
    rep.exact = true;
  } else {
    // Infinite images keep growing as the depth doubles.
    const auto p1 = apply_effective_map(h, p, depth), p2 = apply_effective_map(h, p, 2 * depth);
    const auto q1 = apply_effective_map(h, q, depth), q2 = apply_effective_map(h, q, 2 * depth);
    p_infinite = p2.value.size() > p1.value.size();
    q_infinite = q2.value.size() > q1.value.size();
    monotone = p2.value.is_subset_of(q2.value);
    rep.exact = p2.exact && q2.exact;
  }
  rep.contradiction = true;
  if (!p_infinite) {
    rep.failing_point = "2N+1";
    rep.reason = "h(2N+1) is finite although 2N+1 lacks 0";
  } else if (q_infinite) {
    rep.failing_point = "{0}|2N+1";
    rep.reason = "h({0}|2N+1) is infinite although {0}|2N+1 contains 0";
  } else {
    rep.failing_point = "monotonicity";
    rep.reason = monotone ? "an infinite image lies below a finite one"
                          : "h(2N+1) is not included in h({0}|2N+1)";
  }
  return rep;
}

DualityWitness duality_failure_witness() {
  return {exact_family("B{0}", {}, [](const UPSet& x) { return x.contains(0); }),
          exact_family("FIN", {}, [](const UPSet& x) { return x.is_finite(); })};
}

// ---- trees ----

namespace {

bool bfs_less(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

BTree::BTree(std::vector<Sequence> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(), bfs_less);
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || !nodes_.front().empty())
    throw Error(ErrorKind::InvalidInput, "tree must contain the empty sequence");
  for (const auto& s : nodes_)
    if (!s.empty() && !contains(Sequence(s.begin(), s.end() - 1)))
      throw Error(ErrorKind::InvalidInput, "tree is not prefix-closed");
}

bool BTree::contains(const Sequence& s) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), s, bfs_less);
}

std::uint64_t BTree::xi(const Sequence& s) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s, bfs_less);
  if (it == nodes_.end() || *it != s) throw Error(ErrorKind::InvalidInput, "sequence not in tree");
  return 2 * static_cast<std::uint64_t>(it - nodes_.begin());
}

FiniteSet BTree::e(const Sequence& s) const {
  FiniteSet out;
  for (std::size_t i = 0; i <= s.size(); ++i) out.push_back(xi(Sequence(s.begin(), s.begin() + i)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<UPSet> tree_codes(const BTree& t, bool odd_only) {
  std::vector<UPSet> out;
  for (const auto& s : t.nodes())
    if (!odd_only || s.size() % 2 == 1) out.push_back(UPSet::finite(t.e(s)));
  return out;
}

bool in_b(const std::vector<UPSet>& codes, const UPSet& x) {
  if (x.is_infinite()) return true;
  return std::none_of(codes.begin(), codes.end(), [&](const UPSet& e) { return x.is_subset_of(e); });
}

bool in_y(const std::vector<UPSet>& odd_codes, const UPSet& x) {
  return std::any_of(odd_codes.begin(), odd_codes.end(), [&](const UPSet& e) { return x == e; });
}

}  // namespace

BtFamilies bt_family(const BTree& t) {
  const auto all = tree_codes(t, false);
  const auto odd = tree_codes(t, true);
  const std::string size = std::to_string(t.nodes().size());
  return {exact_family("B(T)", {size}, [all](const UPSet& x) { return in_b(all, x); }),
          exact_family("Y", {size}, [odd](const UPSet& x) { return in_y(odd, x); }),
          exact_family("Z", {size},
                       [all, odd](const UPSet& x) { return in_y(odd, x) || in_b(all, x); })};
}

// ---- Y_{alpha,beta} ----

std::uint64_t odd_code(const Ordinal& delta) {
  const auto [q, r] = split(delta);
  const std::uint64_t scale = pow2(q + 1);
  if (r > (UINT64_MAX / scale - 1) / 2) throw Error(ErrorKind::BoundExceeded, "code overflows");
  return scale * (2 * r + 1) + 1;
}

std::optional<Ordinal> odd_code_index(std::uint64_t x) {
  if (x < 3 || x % 2 == 0) return std::nullopt;
  const std::uint64_t m = x - 1;
  const unsigned q1 = std::countr_zero(m);
  const std::uint64_t r = ((m >> q1) - 1) / 2;
  return add(Ordinal::omega_times(q1 - 1, 0), Ordinal::natural(r));
}

namespace {

// Codes of row q: {a_{w*q+r} | r in N}.
UPSet code_row(std::uint64_t q) { return UPSet::make_ap(pow2(q + 1) + 1, pow2(q + 2)); }

// {a_d | d < bound}
UPSet codes_below(const Ordinal& bound) {
  const auto [q, r] = split(bound);
  UPSet out;
  for (std::uint64_t row = 0; row < q; ++row) out = out | code_row(row);
  if (r > 0) out = out | (code_row(q) & UPSet::interval(0, odd_code(add(Ordinal::omega_times(q, 0), Ordinal::natural(r - 1))) + 1));
  return out;
}

// Least d < bound with a_d in X.
std::optional<Ordinal> least_code(const UPSet& x, const Ordinal& bound) {
  const auto [q, r] = split(bound);
  for (std::uint64_t row = 0; row <= q; ++row) {
    if (row == q && r == 0) break;
    UPSet hits = x & code_row(row);
    if (row == q) hits = hits & codes_below(bound);
    if (const auto m = hits.min_element()) return odd_code_index(*m);
  }
  return std::nullopt;
}

bool in_a_beta(const UPSet& x, const Ordinal& beta) {
  if (!x.contains(1) || !x.is_subset_of(odds())) return false;
  const auto d = least_code(x, beta);
  return d && !same_parity(*d, beta);
}

bool in_y_alpha(const std::vector<UPSet>& odd_codes, const UPSet& x) { return in_y(odd_codes, x); }

}  // namespace

UPSet YAlphaBeta::chain_element(const Ordinal& delta) const {
  if (delta > alpha) throw Error(ErrorKind::InvalidInput, "chain index above alpha");
  return (codes_below(alpha) - codes_below(delta)) | UPSet::finite({1});
}

YAlphaBeta y_alpha_beta(const Ordinal& alpha, const Ordinal& beta, const BTree& t) {
  if (!below_omega_squared(alpha))
    throw Error(ErrorKind::HypothesisFailed, "alpha must be below w^2 for the odd coding");
  if (!(beta < alpha)) throw Error(ErrorKind::HypothesisFailed, "beta must be below alpha");
  const auto [aq, ar] = split(alpha);
  if (aq + 2 > 26) throw Error(ErrorKind::HypothesisFailed, "alpha has too many rows for the coding");

  YAlphaBeta y;
  y.alpha = alpha;
  y.beta = beta;
  y.proper_hypothesis = beta >= Ordinal::omega_times(1, 0) && absorbs(beta, alpha);
  const std::vector<std::string> params{alpha.to_string(), beta.to_string()};

  y.a = exact_family("A", {alpha.to_string()}, [alpha](const UPSet& x) {
    if (!x.contains(1)) return false;
    const auto d = least_code(x, alpha);
    return d && !same_parity(*d, alpha);
  });
  y.a_beta = exact_family("A_beta", params, [beta](const UPSet& x) { return in_a_beta(x, beta); });
  const auto odd = tree_codes(t, true);
  y.y_alpha = exact_family("Y_alpha", {alpha.to_string()},
                           [odd](const UPSet& x) { return in_y_alpha(odd, x); });
  y.y = exact_family("Y_alpha_beta", params, [odd, beta](const UPSet& x) {
    return in_a_beta(x, beta) || in_y_alpha(odd, x);
  });
  const auto all = tree_codes(t, false);
  y.z = exact_family("Z_alpha_beta", params, [odd, all, beta](const UPSet& x) {
    return (x.contains(0) && in_b(all, x)) || in_a_beta(x, beta) || in_y_alpha(odd, x);
  });

  const auto [bq, br] = split(beta);
  for (std::uint64_t q = 0; q <= bq; ++q) {
    const std::uint64_t cols = q < bq ? 3 : br + 1;
    for (std::uint64_t r = 0; r < cols; ++r)
      y.chain_indices.push_back(add(Ordinal::omega_times(q, 0), Ordinal::natural(r)));
  }
  for (const auto& d : y.chain_indices) y.chain.push_back(y.chain_element(d));
  return y;
}

EffectiveMap y_alpha_beta_map(const Ordinal& alpha, const Ordinal& beta, const Ordinal& gamma) {
  const Ordinal omega = Ordinal::omega_times(1, 0);
  if (!below_omega_squared(alpha))
    throw Error(ErrorKind::HypothesisFailed, "alpha must be below w^2 for the odd coding");
  if (!(omega <= beta && beta < gamma && gamma < alpha))
    throw Error(ErrorKind::HypothesisFailed, "map needs w <= beta < gamma < alpha");
  const UPSet below_beta = codes_below(beta);
  const UPSet one = UPSet::finite({1});
  const std::string name = "f[" + beta.to_string() + "->" + gamma.to_string() + "]";
  if (same_parity(beta, gamma)) {
    const UPSet marker = UPSet::finite({odd_code(beta)});
    const UPSet keep = below_beta | one;
    return finitary_map(name, [=](const UPSet& x) {
      UPSet out = (x & evens()) | (x & keep);
      if (x.intersects(odds())) out = out | marker;
      return out;
    });
  }
  const UPSet marker = UPSet::finite({odd_code(add(beta, Ordinal::natural(1)))});
  const std::uint64_t rows = split(beta).q + 1;
  return finitary_map(name, [=](const UPSet& x) {
    UPSet out = (x & evens()) | (x & one);
    // a_d -> a_{d+1} moves along a row by 2^{q+2}.
    const UPSet hits = x & below_beta;
    for (std::uint64_t q = 0; q < rows; ++q) {
      const UPSet row = hits & code_row(q);
      if (!row.is_empty()) out = out | row.shifted(pow2(q + 2));
    }
    if (x.intersects(odds())) out = out | marker;
    return out;
  });
}

// ---- the R chain ----

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
}

namespace {

std::int64_t floor_div2(std::int64_t w) { return w >= 0 ? w / 2 : -((-w + 1) / 2); }

// phi_i(p) in E_i: the t-th element with t = 2p (p >= 0) or -2p-1 (p < 0).
std::uint64_t phi(std::size_t i, std::int64_t p) {
  const std::uint64_t t = p >= 0 ? 2 * static_cast<std::uint64_t>(p) : static_cast<std::uint64_t>(-(p + 1)) * 2 + 1;
  return pow2(i + 1) * (2 * t + 1);
}

// {phi(p), phi(p)+1 | p < n}
UPSet pairs_below(std::size_t i, std::int64_t n) {
  // p < min(n, 0) gives the odd t >= 1 - 2 min(n, 0): t = 2s+1 with s >= -min(n, 0).
  const std::uint64_t s0 = static_cast<std::uint64_t>(-std::min<std::int64_t>(n, 0));
  UPSet ev = UPSet::make_ap(pow2(i + 1) * (4 * s0 + 3), pow2(i + 3));
  FiniteSet extra;
  for (std::int64_t p = 0; p < n; ++p) extra.push_back(phi(i, p));
  std::sort(extra.begin(), extra.end());
  ev = ev | UPSet::finite(extra);
  return ev | ev.shifted(1);
}

}  // namespace

UPSet RChain::at(const RIndex& index) const {
  if (index.is_gap) {
    if (index.gap >= gaps.size()) throw Error(ErrorKind::InvalidInput, "gap index out of range");
    return gaps[index.gap];
  }
  const auto it = std::find(rationals.begin(), rationals.end(), index.q);
  if (it == rationals.end()) throw Error(ErrorKind::InvalidInput, "rational not materialized");
  const std::size_t i = static_cast<std::size_t>(it - rationals.begin());
  const std::size_t s = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), i) - sorted.begin());
  const std::int64_t w = index.z - eps[i];
  const std::int64_t n = floor_div2(w);
  if (w - 2 * n == 0) return gaps[s] | pairs_below(i, n) | UPSet::finite({phi(i, n)});
  return gaps[s] | pairs_below(i, n + 1);
}

bool RChain::less(const RIndex& a, const RIndex& b) const {
  // Position of a rational among the sorted ones; a gap s sits just below position s.
  auto key = [&](const RIndex& x) -> std::pair<std::size_t, int> {
    if (x.is_gap) return {x.gap, 0};
    std::size_t s = 0;
    while (s < sorted.size() && rationals[sorted[s]] < x.q) ++s;
    return {s, 1};
  };
  const auto ka = key(a), kb = key(b);
  if (ka != kb) return ka < kb;
  return !a.is_gap && a.z < b.z;
}

RChain r_chain(const std::vector<PatternEntry>& pattern) {
  RChain rc;
  std::map<std::pair<std::size_t, std::int64_t>, bool> seen;
  for (const auto& e : pattern) {
    const Rational q = Rational::make(e.q.num, e.q.den);
    auto it = std::find(rc.rationals.begin(), rc.rationals.end(), q);
    std::size_t i = static_cast<std::size_t>(it - rc.rationals.begin());
    // (q, z) is in the pattern iff z - eps_q is even.
    const int eps = static_cast<int>(((e.z % 2) + 2) % 2) ^ (e.in ? 0 : 1);
    if (it == rc.rationals.end()) {
      rc.rationals.push_back(q);
      rc.eps.push_back(eps);
    } else if (rc.eps[i] != eps) {
      throw Error(ErrorKind::InvalidPattern, "pattern does not alternate along the Z-chain of " + q.to_string());
    }
    const auto [pos, fresh] = seen.emplace(std::pair{i, e.z}, e.in);
    if (!fresh && pos->second != e.in)
      throw Error(ErrorKind::InvalidPattern, "index listed twice with different membership");
  }
  if (rc.rationals.size() + 3 > 26) throw Error(ErrorKind::BoundExceeded, "too many rationals");

  rc.sorted.resize(rc.rationals.size());
  std::iota(rc.sorted.begin(), rc.sorted.end(), std::size_t{0});
  std::sort(rc.sorted.begin(), rc.sorted.end(),
            [&](std::size_t a, std::size_t b) { return rc.rationals[a] < rc.rationals[b]; });
  rc.gaps.push_back(UPSet::empty());
  for (std::size_t s = 0; s < rc.sorted.size(); ++s) {
    const UPSet e = dyadic_partition(static_cast<unsigned>(rc.sorted[s]));
    rc.gaps.push_back(rc.gaps.back() | e | e.shifted(1));
  }

  for (std::size_t s = 0; s <= rc.sorted.size(); ++s) {
    RIndex g;
    g.is_gap = true;
    g.gap = s;
    rc.points.push_back({g, rc.gaps[s], false});
    if (s == rc.sorted.size()) break;
    const std::size_t i = rc.sorted[s];
    for (auto it = seen.lower_bound({i, INT64_MIN}); it != seen.end() && it->first.first == i; ++it) {
      RIndex x;
      x.q = rc.rationals[i];
      x.z = it->first.second;
      rc.points.push_back({x, rc.at(x), it->second});
    }
  }
  return rc;
}

std::vector<Rational> enumerated_rationals(std::size_t count) {
  std::vector<Rational> out;
  if (count == 0) return out;
  out.push_back(Rational::make(0));
  // Calkin-Wilf: next(a/b) = b / (2*floor(a/b)*b - a + b).
  std::int64_t a = 1, b = 1;
  while (out.size() < count) {
    out.push_back(Rational::make(a, b));
    if (out.size() < count) out.push_back(Rational::make(-a, b));
    const std::int64_t next_den = 2 * (a / b) * b - a + b;
    a = b;
    b = next_den;
  }
  return out;
}

std::vector<PatternEntry> standard_pattern(std::size_t count, std::int64_t zmin, std::int64_t zmax) {
  std::vector<PatternEntry> out;
  const auto qs = enumerated_rationals(count);
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::int64_t z = zmin; z <= zmax; ++z)
      out.push_back({qs[i], z, ((z - static_cast<std::int64_t>(i % 2)) % 2) == 0});
  return out;
}

// ---- increasing S2 chain ----

std::vector<UPSet> increasing_s2_chain(std::size_t m) {
  std::vector<UPSet> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.push_back(UPSet::interval(0, j + 1));
  return out;
}

// ---- complete but not one-to-one complete ----

CompleteNotOneToOne complete_not_one_to_one(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "n must be at least 1");
  if (n + 1 > 26) throw Error(ErrorKind::BoundExceeded, "too many parts");
  CompleteNotOneToOne c;
  c.n = n;
  UPSet used;
  for (std::uint64_t b = 0; b + 1 < n; ++b) {
    c.parts.push_back(dyadic_partition(static_cast<unsigned>(b)));
    used = used | c.parts.back();
  }
  c.parts.push_back(UPSet::naturals() - used);
  c.chain.assign(n + 1, UPSet::empty());
  for (std::uint64_t b = n; b-- > 0;) c.chain[b] = c.chain[b + 1] | c.parts[b];
  c.h = exact_family("H", {std::to_string(n)}, [parts = c.parts, n](const UPSet& x) {
    for (std::uint64_t b = 0; b < parts.size(); ++b)
      if (x.intersects(parts[b])) return (b % 2) != (n % 2);
    return false;
  });
  return c;
}

CompleteNotOneToOneFinite complete_not_one_to_one_finite(int k, unsigned n) {
  if (n < 1 || static_cast<int>(n) > k || k > FiniteLattice::kMaxAtoms)
    throw Error(ErrorKind::InvalidInput, "needs 1 <= n <= k <= 6");
  const FiniteLattice lat(k);
  std::vector<Point> parts;
  for (unsigned b = 0; b + 1 < n; ++b) parts.push_back(Point{1} << b);
  parts.push_back(lat.top() & ~((Point{1} << (n - 1)) - 1));

  CompleteNotOneToOneFinite c;
  c.seq.k = k;
  Point reach = 0;
  for (unsigned b = 0; b < n; ++b) {
    reach |= parts[b];
    Family u(k);
    for (Point p = 0; p < lat.size(); ++p)
      if (p & reach) u = u.with(p);
    c.seq.upsets.push_back(u);
  }
  c.h = evaluate_difference(c.seq);
  Point x = lat.top();
  for (unsigned b = 0; b < n; ++b) {
    c.chain.elements.push_back(x);
    x &= ~parts[b];
  }
  c.chain.elements.push_back(0);
  return c;
}

bool fin_obstruction(const FiniteLattice& lattice, const Family& f) {
  if (lattice.atoms() != f.atoms()) throw Error(ErrorKind::ShapeMismatch, "family over another lattice");
  return is_downset(f);
}

DiffSequence alt_family_from_chain(const AltChain& chain, int k) {
  const FiniteLattice lat(k);
  if (chain.empty()) throw Error(ErrorKind::InvalidChain, "empty chain");
  for (Point p : chain.elements)
    if (!lat.contains(p)) throw Error(ErrorKind::InvalidChain, "chain point outside the lattice");
  if (!is_strictly_decreasing(chain)) throw Error(ErrorKind::InvalidChain, "chain is not strictly decreasing");
  DiffSequence seq;
  seq.k = k;
  const Point top = chain.elements.front();
  for (std::size_t b = 0; b + 1 < chain.length(); ++b) {
    const Point next = chain.elements[b + 1];
    Family u(k);
    for (Point p = 0; p < lat.size(); ++p)
      if (p & top & ~next) u = u.with(p);
    seq.upsets.push_back(u);
  }
  return seq;
}

}  // namespace wadge
