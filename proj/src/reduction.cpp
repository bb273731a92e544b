#include "wadgelab/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "wadgelab/error.hpp"

namespace wadge {
namespace {

Point permute_point(Point p, const std::vector<std::uint32_t>& perm) {
  Point out = 0;
  for (std::uint32_t i = 0; i < perm.size(); ++i)
    if ((p >> i) & 1) out |= Point{1} << perm[i];
  return out;
}

std::vector<std::vector<std::uint32_t>> all_permutations(int k) {
  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Source points by popcount then mask: every lower cover precedes its point.
std::vector<Point> search_order(int j) {
  std::vector<Point> order(1u << j);
  std::iota(order.begin(), order.end(), Point{0});
  std::stable_sort(order.begin(), order.end(),
                   [](Point a, Point b) { return std::popcount(a) < std::popcount(b); });
  return order;
}

unsigned thread_count(const SearchOptions& options) {
  if (options.threads) return options.threads;
  if (const char* env = std::getenv("WADGELAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

class Searcher {
 public:
  Searcher(const Family& a, const Family& b, SearchConstraint c, const SearchOptions& options,
           std::atomic<std::uint64_t>& nodes)
      : a_(a), b_(b), c_(c), options_(options), nodes_(nodes), order_(search_order(a.atoms())),
        table_(std::size_t{1} << a.atoms(), 0), used_(std::size_t{1} << b.atoms(), 0) {
    const FiniteLattice target = b.lattice();
    if (options.symmetry_pruning) {
      for (const auto& perm : all_permutations(b.atoms())) {
        std::vector<Point> image(target.size());
        bool preserves = true;
        for (Point q = 0; q < target.size(); ++q) {
          image[q] = permute_point(q, perm);
          preserves = preserves && b.contains(image[q]) == b.contains(q);
        }
        bool identity = true;
        for (Point q = 0; q < target.size(); ++q) identity = identity && image[q] == q;
        if (preserves && !identity) symmetries_.push_back(std::move(image));
      }
    }
  }

  // Candidates for the first point in order, after symmetry reduction.
  std::vector<Point> root_candidates() const {
    std::vector<std::size_t> all(symmetries_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return candidates(0, all);
  }

  std::optional<std::vector<Point>> run(std::optional<Point> root) {
    std::vector<std::size_t> active(symmetries_.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
    if (!root) {
      if (dfs(0, active)) return table_;
      return std::nullopt;
    }
    if (assign_and_recurse(0, *root, active)) return table_;
    return std::nullopt;
  }

 private:
  Point lower_bound(Point p) const {
    Point lb = 0;
    for (Point rest = p; rest; rest &= rest - 1) lb |= table_[p & ~(Point{1} << std::countr_zero(rest))];
    return lb;
  }

  std::vector<Point> candidates(std::size_t d, const std::vector<std::size_t>& active) const {
    const Point p = order_[d];
    const Point lb = lower_bound(p);
    const bool want = a_.contains(p);
    std::vector<Point> out;
    for (Point q = 0; q < b_.lattice().size(); ++q) {
      if ((q & lb) != lb || b_.contains(q) != want) continue;
      if (c_.mode != SearchConstraint::Mode::Any && used_[q] >= c_.bound) continue;
      bool minimal = true;
      for (std::size_t s : active)
        if (symmetries_[s][q] < q) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(q);
    }
    return out;
  }

  bool assign_and_recurse(std::size_t d, Point q, const std::vector<std::size_t>& active) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= options_.max_nodes)
      throw Error(ErrorKind::ResourceBound,
                  "search exceeded " + std::to_string(options_.max_nodes) + " nodes");
    const Point p = order_[d];
    table_[p] = q;
    ++used_[q];
    std::vector<std::size_t> next;
    for (std::size_t s : active)
      if (symmetries_[s][q] == q) next.push_back(s);
    const bool found = dfs(d + 1, next);
    if (!found) --used_[q];
    return found;
  }

  bool dfs(std::size_t d, const std::vector<std::size_t>& active) {
    if (d == order_.size()) return true;
    for (Point q : candidates(d, active))
      if (assign_and_recurse(d, q, active)) return true;
    return false;
  }

  const Family& a_;
  const Family& b_;
  SearchConstraint c_;
  const SearchOptions& options_;
  std::atomic<std::uint64_t>& nodes_;
  std::vector<Point> order_;
  std::vector<Point> table_;
  std::vector<std::uint32_t> used_;
  std::vector<std::vector<Point>> symmetries_;
};

}  // namespace

MonotoneMap::MonotoneMap(int j, int k, std::vector<Point> table) : j_(j), k_(k), table_(std::move(table)) {
  const FiniteLattice src(j), dst(k);
  if (table_.size() != src.size()) throw Error(ErrorKind::ShapeMismatch, "map table has wrong length");
  for (Point q : table_)
    if (!dst.contains(q)) throw Error(ErrorKind::InvalidInput, "map image outside the target lattice");
  if (!is_monotone()) throw Error(ErrorKind::InvalidInput, "map table is not monotone");
}

MonotoneMap MonotoneMap::identity(int k) {
  std::vector<Point> table(FiniteLattice(k).size());
  std::iota(table.begin(), table.end(), Point{0});
  return MonotoneMap(k, k, std::move(table));
}

MonotoneMap MonotoneMap::constant(int j, int k, Point value) {
  return MonotoneMap(j, k, std::vector<Point>(FiniteLattice(j).size(), value));
}

MonotoneMap MonotoneMap::from_permutation(const std::vector<std::uint32_t>& perm) {
  const int k = static_cast<int>(perm.size());
  std::vector<std::uint32_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw Error(ErrorKind::InvalidInput, "not a permutation");
  std::vector<Point> table(FiniteLattice(k).size());
  for (Point p = 0; p < table.size(); ++p) table[p] = permute_point(p, perm);
  return MonotoneMap(k, k, std::move(table));
}

bool MonotoneMap::is_monotone() const {
  // Checking lower covers suffices.
  for (Point p = 0; p < table_.size(); ++p)
    for (int i = 0; i < j_; ++i)
      if (!((p >> i) & 1) && !point_subset(table_[p], table_[p | (Point{1} << i)])) return false;
  return true;
}

bool MonotoneMap::is_injective() const { return max_preimage() <= 1; }

std::uint32_t MonotoneMap::max_preimage() const {
  std::vector<std::uint32_t> count(FiniteLattice(k_).size(), 0);
  std::uint32_t best = 0;
  for (Point q : table_) best = std::max(best, ++count[q]);
  return best;
}

Family MonotoneMap::preimage(const Family& target) const {
  if (target.atoms() != k_) throw Error(ErrorKind::ShapeMismatch, "family not over the map's target");
  std::uint64_t bits = 0;
  for (Point p = 0; p < table_.size(); ++p)
    if (target.contains(table_[p])) bits |= std::uint64_t{1} << p;
  return Family(j_, bits);
}

SearchConstraint SearchConstraint::bounded(std::uint32_t b) {
  if (b == 0) throw Error(ErrorKind::InvalidInput, "preimage bound must be >= 1");
  return {Mode::BoundedPreimage, b};
}

SearchConstraint SearchConstraint::parse(const std::string& text) {
  if (text == "any") return any();
  if (text == "1to1") return one_to_one();
  if (text.rfind("fto1:", 0) == 0) {
    const std::string digits = text.substr(5);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw Error(ErrorKind::InvalidInput, "bad preimage bound in '" + text + "'");
    return bounded(static_cast<std::uint32_t>(std::stoul(digits)));
  }
  throw Error(ErrorKind::InvalidInput, "unknown mode '" + text + "' (any|1to1|fto1:<b>)");
}

std::string SearchConstraint::to_string() const {
  switch (mode) {
    case Mode::Any: return "any";
    case Mode::OneToOne: return "1to1";
    case Mode::BoundedPreimage: return "fto1:" + std::to_string(bound);
  }
  return "any";
}

bool SearchConstraint::admits(const MonotoneMap& f) const {
  return mode == Mode::Any || f.max_preimage() <= bound;
}

bool check_reduction(const MonotoneMap& f, const Family& a, const Family& b) {
  if (a.atoms() != f.source_atoms() || b.atoms() != f.target_atoms())
    throw Error(ErrorKind::ShapeMismatch, "families do not match the map's lattices");
  return f.is_monotone() && f.preimage(b) == a;
}

std::optional<MonotoneMap> search_reduction(const Family& a, const Family& b, SearchConstraint c,
                                            const SearchOptions& options, SearchStats* stats) {
  if (a.atoms() > FiniteLattice::kMaxEnumerableAtoms || b.atoms() > FiniteLattice::kMaxEnumerableAtoms)
    throw Error(ErrorKind::ResourceBound, "reduction search needs j, k <= 4");
  if (c.mode == SearchConstraint::Mode::BoundedPreimage && c.bound == 0)
    throw Error(ErrorKind::InvalidInput, "preimage bound must be >= 1");
  std::atomic<std::uint64_t> nodes{0};
  std::optional<std::vector<Point>> found;
  const unsigned threads = thread_count(options);

  if (threads <= 1) {
    Searcher s(a, b, c, options, nodes);
    found = s.run(std::nullopt);
  } else {
    // Split the root's candidates across workers; keep the least branch that succeeds.
    const std::vector<Point> roots = Searcher(a, b, c, options, nodes).root_candidates();
    std::vector<std::optional<std::vector<Point>>> results(roots.size());
    std::vector<std::exception_ptr> errors(roots.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, roots.size()); ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < roots.size();) {
          try {
            Searcher s(a, b, c, options, nodes);
            results[i] = s.run(roots[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      if (results[i]) {
        found = results[i];
        break;
      }
    }
  }
  if (stats) stats->nodes = nodes.load();
  if (!found) return std::nullopt;
  return MonotoneMap(a.atoms(), b.atoms(), std::move(*found));
}

std::vector<MonotoneMap> all_monotone_maps(int j, int k, std::size_t limit) {
  const FiniteLattice src(j), dst(k);
  std::vector<MonotoneMap> out;
  std::vector<Point> table(src.size(), 0);
  // Mask order is a linear extension of inclusion, so lower covers come first.
  auto rec = [&](auto&& self, Point p) -> void {
    if (p == src.size()) {
      if (out.size() >= limit) throw Error(ErrorKind::ResourceBound, "too many monotone maps");
      out.emplace_back(j, k, table);
      return;
    }
    Point lb = 0;
    for (int i = 0; i < j; ++i)
      if ((p >> i) & 1) lb |= table[p & ~(Point{1} << i)];
    for (Point q = 0; q < dst.size(); ++q) {
      if ((q & lb) != lb) continue;
      table[p] = q;
      self(self, p + 1);
    }
  };
  rec(rec, 0);
  return out;
}

MonotoneMap hardness_reduction_from_chain(const AltChain& chain, const Family& h, const DiffSequence& seq) {
  validate(seq);
  if (chain.length() != seq.length() + 1)
    throw Error(ErrorKind::InvalidInput, "chain must have one more point than the sequence has entries");
  if (!is_alternating_chain(h, chain))
    throw Error(ErrorKind::InvalidWitness, "chain is not alternating for the target family");
  const FiniteLattice src(seq.k);
  std::vector<Point> table(src.size());
  for (Point z = 0; z < src.size(); ++z) {
    std::size_t tau = seq.length();
    for (std::size_t b = 0; b < seq.length(); ++b)
      if (seq.upsets[b].contains(z)) {
        tau = b;
        break;
      }
    table[z] = chain.elements[tau];
  }
  return MonotoneMap(seq.k, h.atoms(), std::move(table));
}

UniversalityReport universal_from_complete(const FiniteLattice& lattice, const Family& s, unsigned n) {
  if (lattice.atoms() > 3) throw Error(ErrorKind::ResourceBound, "universality check needs k <= 3");
  if (s.atoms() != lattice.atoms()) throw Error(ErrorKind::ShapeMismatch, "S over another lattice");
  UniversalityReport report;
  report.k = lattice.atoms();
  report.n = n;
  std::set<std::uint64_t> slices;
  const auto maps = all_monotone_maps(lattice.atoms(), lattice.atoms());
  report.maps = maps.size();
  for (const auto& f : maps) slices.insert(f.preimage(s).bits());
  for (std::uint64_t bits : slices) report.slices.emplace_back(lattice.atoms(), bits);
  const auto& dn = difference_class(lattice.atoms(), n);
  bool complete = true, within = true;
  for (std::uint64_t f = 0; f < family_count(lattice); ++f) {
    const bool in_dn = (dn[f / 64] >> (f % 64)) & 1;
    const bool is_slice = slices.count(f) > 0;
    if (in_dn && !is_slice) complete = false;
    if (is_slice && !in_dn) within = false;
  }
  report.complete = complete;
  report.exact = complete && within;
  return report;
}

std::optional<std::vector<std::uint32_t>> automorphism_decomposition(const MonotoneMap& f) {
  if (f.source_atoms() != f.target_atoms()) return std::nullopt;
  const int k = f.source_atoms();
  if (!f.is_monotone() || !f.is_injective()) return std::nullopt;
  std::vector<std::uint32_t> perm(k);
  for (int i = 0; i < k; ++i) {
    const Point q = f(Point{1} << i);
    if (std::popcount(q) != 1) return std::nullopt;
    perm[i] = std::countr_zero(q);
  }
  for (Point p = 0; p < f.table().size(); ++p)
    if (f(p) != permute_point(p, perm)) return std::nullopt;
  return perm;
}

ScatteredChain make_scattered_chain(std::vector<UPSet> elements) {
  if (elements.empty()) throw Error(ErrorKind::InvalidChain, "empty chain");
  ScatteredChain sc;
  for (std::size_t b = 0; b + 1 < elements.size(); ++b) {
    if (!elements[b + 1].is_subset_of(elements[b]) || elements[b + 1] == elements[b])
      throw Error(ErrorKind::InvalidChain, "chain not strictly decreasing at " + std::to_string(b));
    const UPSet diff = elements[b] - elements[b + 1];
    if (!diff.is_infinite())
      throw Error(ErrorKind::NotScattered, "difference at " + std::to_string(b) + " is finite");
    sc.thetas.push_back({elements[b + 1], diff});
  }
  if (!elements.back().is_infinite()) throw Error(ErrorKind::NotScattered, "last element is finite");
  sc.thetas.push_back({UPSet::empty(), elements.back()});
  sc.elements = std::move(elements);
  return sc;
}

void validate_scattered(const ScatteredChain& chain) {
  if (chain.elements.empty() || chain.thetas.size() != chain.elements.size())
    throw Error(ErrorKind::InvalidWitness, "one embedding per chain element required");
  const std::size_t a = chain.alpha();
  for (std::size_t b = 0; b <= a; ++b) {
    const UPSet base = b < a ? chain.elements[b + 1] : UPSet::empty();
    const UPSet range = b < a ? chain.elements[b] - chain.elements[b + 1] : chain.elements[a];
    if (!range.is_infinite())
      throw Error(ErrorKind::InvalidWitness, "interval " + std::to_string(b) + " has finitely many points");
    if (!(chain.thetas[b].base == base) || !(chain.thetas[b].range == range))
      throw Error(ErrorKind::InvalidWitness, "embedding " + std::to_string(b) + " leaves its interval");
  }
}

std::size_t GeneratedSequence::tau(const UPSet& z) const {
  for (std::size_t b = 0; b < generators.size(); ++b)
    for (const auto& g : generators[b])
      if (std::all_of(g.begin(), g.end(), [&z](std::uint64_t v) { return z.contains(v); })) return b;
  return generators.size();
}

bool GeneratedSequence::in_difference_set(const UPSet& z) const {
  const std::size_t t = tau(z);
  return t < length() && t % 2 != length() % 2;
}

OneToOneReduction::OneToOneReduction(ScatteredChain chain, GeneratedSequence seq)
    : chain_(std::move(chain)), seq_(std::move(seq)) {
  validate_scattered(chain_);
  if (chain_.elements.size() != seq_.length() + 1)
    throw Error(ErrorKind::InvalidInput, "chain must have one more element than the sequence");
}

Approximation OneToOneReduction::apply(const UPSet& z, std::uint64_t depth) const {
  const UPSet codes = canonical_code_set(z, depth);
  bool exact = false;
  if (z.is_finite()) {
    const auto m = z.max_element();
    exact = !m || (*m < 26 && (std::uint64_t{1} << (*m + 1)) <= depth);
  }
  return {chain_.thetas[tau(z)].apply(codes), exact};
}

OneToOneReduction one_to_one_reduction_from_scattered(ScatteredChain sc, GeneratedSequence seq) {
  return OneToOneReduction(std::move(sc), std::move(seq));
}

UPSet ChainImage::theta(std::size_t b, const UPSet& z) const {
  if (!map || !exact) throw Error(ErrorKind::InvalidInput, "theta needs exact images");
  return map->exact(sources.at(b).apply(z));
}

ChainImage chain_image_transform(const EffectiveMap& f, const std::vector<UPSet>& special, std::uint64_t depth) {
  const ScatteredChain source = make_scattered_chain(special);
  ChainImage out;
  out.sources = source.thetas;
  out.map = f;
  const std::size_t a = special.size() - 1;
  if (f.has_exact()) {
    out.exact = true;
    std::vector<UPSet> z;
    for (const auto& x : special) z.push_back(f.exact(x));
    for (std::size_t b = 0; b < a; ++b) {
      if (!z[b + 1].is_subset_of(z[b]))
        throw Error(ErrorKind::InvalidWitness, "map is not increasing on the chain");
      if (!(z[b] - z[b + 1]).is_infinite())
        throw Error(ErrorKind::NotScattered, "image difference at " + std::to_string(b) + " is finite");
    }
    if (!z[a].is_infinite()) throw Error(ErrorKind::NotScattered, "image of the last element is finite");
    out.chain = make_scattered_chain(std::move(z));
    out.growing.assign(a + 1, true);
    return out;
  }
  std::vector<UPSet> small, large;
  for (const auto& x : special) {
    small.push_back(apply_effective_map(f, x, depth).value);
    large.push_back(apply_effective_map(f, x, 2 * depth).value);
  }
  for (std::size_t b = 0; b <= a; ++b) {
    const UPSet ds = b < a ? small[b] - small[b + 1] : small[b];
    const UPSet dl = b < a ? large[b] - large[b + 1] : large[b];
    out.growing.push_back(dl.size().value_or(0) > ds.size().value_or(0));
  }
  out.chain.elements = std::move(large);
  return out;
}

}  // namespace wadge
