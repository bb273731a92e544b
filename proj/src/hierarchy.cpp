#include "wadgelab/hierarchy.hpp"

#include <array>
#include <bit>
#include <memory>
#include <mutex>

#include "wadgelab/error.hpp"

namespace wadge {
namespace {

constexpr int kNegInf = -1;

bool proper_subset(Point p, Point q) { return p != q && point_subset(p, q); }

}  // namespace

void validate(const DiffSequence& seq) {
  FiniteLattice lattice(seq.k);
  for (std::size_t i = 0; i < seq.upsets.size(); ++i) {
    const Family& u = seq.upsets[i];
    if (u.atoms() != seq.k) throw Error(ErrorKind::InvalidSequence, "sequence entry over another lattice");
    if (!is_upset(u)) throw Error(ErrorKind::InvalidSequence, "sequence entry " + std::to_string(i) + " is not an upset");
    if (i && (seq.upsets[i - 1].bits() & ~u.bits()))
      throw Error(ErrorKind::InvalidSequence, "sequence not increasing at " + std::to_string(i));
  }
}

Family evaluate_difference(const DiffSequence& seq) {
  validate(seq);
  const std::size_t n = seq.length();
  std::uint64_t seen = 0, out = 0;
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint64_t layer = seq.upsets[b].bits() & ~seen;
    if (b % 2 != n % 2) out |= layer;
    seen |= layer;
  }
  return Family(seq.k, out);
}

bool is_strictly_decreasing(const AltChain& chain) {
  for (std::size_t i = 1; i < chain.elements.size(); ++i)
    if (!proper_subset(chain.elements[i], chain.elements[i - 1])) return false;
  return true;
}

bool is_alternating_chain(const Family& f, const AltChain& chain) {
  const FiniteLattice lattice = f.lattice();
  if (chain.empty() || !is_strictly_decreasing(chain)) return false;
  const std::size_t alpha = chain.length() - 1;
  for (std::size_t b = 0; b <= alpha; ++b) {
    const Point x = chain.elements[b];
    if (!lattice.contains(x)) return false;
    if (f.contains(x) != (b % 2 != alpha % 2)) return false;
  }
  return true;
}

bool is_special_chain(const Family& f, const AltChain& chain) {
  if (!is_alternating_chain(f, chain)) return false;
  const FiniteLattice lattice = f.lattice();
  const std::size_t alpha = chain.length() - 1;
  for (Point x = 0; x < lattice.size(); ++x) {
    for (std::size_t b = 0; b < alpha; ++b) {
      if (point_subset(x, chain.elements[b]) && proper_subset(chain.elements[b + 1], x) &&
          f.contains(x) != (b % 2 != alpha % 2))
        return false;
    }
    if (point_subset(x, chain.elements[alpha]) && f.contains(x)) return false;
  }
  return true;
}

ChainResult longest_alternating_chain(const Family& f) {
  const FiniteLattice lattice = f.lattice();
  const Point size = lattice.size();
  // down[p]: most points in an alternating chain with top p whose bottom is outside F.
  std::vector<int> down(size, kNegInf);
  int best = 0;
  for (Point p = 0; p < size; ++p) {
    int d = f.contains(p) ? kNegInf : 1;
    for (Point q = 0; q < p; ++q)
      if (proper_subset(q, p) && f.contains(q) != f.contains(p) && down[q] != kNegInf)
        d = std::max(d, down[q] + 1);
    down[p] = d;
    best = std::max(best, d);
  }
  ChainResult result;
  result.length = static_cast<std::size_t>(best);
  if (best == 0) return result;
  Point cur = 0;
  while (down[cur] != best) ++cur;
  result.witness.elements.push_back(cur);
  for (int need = best - 1; need > 0; --need) {
    Point next = 0;
    while (!(proper_subset(next, cur) && f.contains(next) != f.contains(cur) && down[next] == need)) ++next;
    result.witness.elements.push_back(next);
    cur = next;
  }
  return result;
}

std::string_view side_name(Side side) noexcept {
  switch (side) {
    case Side::D: return "D";
    case Side::CoD: return "coD";
    case Side::Both: return "both";
  }
  return "D";
}

LevelReport chain_level(const Family& f) {
  const ChainResult own = longest_alternating_chain(f);
  const ChainResult co = longest_alternating_chain(f.complement());
  const unsigned d_level = std::max<unsigned>(1, static_cast<unsigned>(co.length));
  const unsigned cod_level = std::max<unsigned>(1, static_cast<unsigned>(own.length));
  LevelReport report;
  report.level = std::min(d_level, cod_level);
  report.side = d_level == cod_level ? Side::Both : (d_level < cod_level ? Side::D : Side::CoD);
  report.witness = own.witness;
  report.co_witness = co.witness;
  return report;
}

namespace {

// Bitmaps of D_n over all families of P_k, n = 0..k+1, built by running
// every increasing upset sequence. A partial sequence is summarized by its
// last upset and the union of its even layers.
struct DifferenceTable {
  std::vector<std::vector<std::uint64_t>> levels;
};

DifferenceTable build_table(int k) {
  const FiniteLattice lattice(k);
  const std::vector<Family> ups = all_upsets(lattice);
  const std::uint64_t families = family_count(lattice);
  const std::size_t words = static_cast<std::size_t>((families + 63) / 64);
  std::vector<std::uint32_t> index(families, UINT32_MAX);
  for (std::uint32_t i = 0; i < ups.size(); ++i) index[ups[i].bits()] = i;
  std::vector<std::vector<std::uint32_t>> supersets(ups.size());
  for (std::uint32_t i = 0; i < ups.size(); ++i)
    for (std::uint32_t j = 0; j < ups.size(); ++j)
      if ((ups[i].bits() & ~ups[j].bits()) == 0) supersets[i].push_back(j);

  const unsigned max_level = static_cast<unsigned>(k) + 1;
  DifferenceTable table;
  table.levels.assign(max_level + 1, std::vector<std::uint64_t>(words, 0));
  // state = top index * families + even-layer union
  std::vector<std::uint64_t> frontier{static_cast<std::uint64_t>(index[0]) * families};
  std::vector<std::uint64_t> seen(static_cast<std::size_t>((ups.size() * families + 63) / 64));
  for (unsigned n = 0;; ++n) {
    for (std::uint64_t state : frontier) {
      const std::uint64_t top = ups[state / families].bits();
      const std::uint64_t even = state % families;
      const std::uint64_t d = n % 2 ? even : top & ~even;
      table.levels[n][d / 64] |= std::uint64_t{1} << (d % 64);
    }
    if (n == max_level) break;
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::uint64_t> next;
    for (std::uint64_t state : frontier) {
      const std::uint32_t ti = static_cast<std::uint32_t>(state / families);
      const std::uint64_t top = ups[ti].bits();
      const std::uint64_t even = state % families;
      for (std::uint32_t j : supersets[ti]) {
        const std::uint64_t layer = ups[j].bits() & ~top;
        const std::uint64_t e = n % 2 == 0 ? even | layer : even;
        const std::uint64_t s = static_cast<std::uint64_t>(j) * families + e;
        if ((seen[s / 64] >> (s % 64)) & 1) continue;
        seen[s / 64] |= std::uint64_t{1} << (s % 64);
        next.push_back(s);
      }
    }
    frontier.swap(next);
  }
  return table;
}

const DifferenceTable& table_for(int k) {
  static std::mutex mu;
  static std::array<std::unique_ptr<DifferenceTable>, FiniteLattice::kMaxEnumerableAtoms + 1> cache;
  if (k < 0 || k > FiniteLattice::kMaxEnumerableAtoms)
    throw Error(ErrorKind::ResourceBound, "brute-force classification needs k <= 4");
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[k]) cache[k] = std::make_unique<DifferenceTable>(build_table(k));
  return *cache[k];
}

}  // namespace

const std::vector<std::uint64_t>& difference_class(int k, unsigned n) {
  const DifferenceTable& table = table_for(k);
  // D_n grows with n and is everything from n = k+1 on.
  return table.levels[std::min<std::size_t>(n, table.levels.size() - 1)];
}

bool in_difference_class(const Family& f, unsigned n) {
  const auto& bitmap = difference_class(f.atoms(), n);
  return (bitmap[f.bits() / 64] >> (f.bits() % 64)) & 1;
}

LevelReport brute_force_level(const Family& f, unsigned max_level) {
  if (max_level == 0) max_level = static_cast<unsigned>(f.atoms()) + 1;
  for (unsigned n = 1; n <= max_level; ++n) {
    const bool d = in_difference_class(f, n);
    const bool cod = in_difference_class(f.complement(), n);
    if (d || cod) {
      LevelReport report;
      report.level = n;
      report.side = d && cod ? Side::Both : (d ? Side::D : Side::CoD);
      return report;
    }
  }
  throw Error(ErrorKind::ResourceBound, "family not found below level " + std::to_string(max_level));
}

DiffSequence lemma_transformers(const DiffSequence& seq_a, const Family& open_l, TransformMode mode,
                                const std::optional<DiffSequence>& seq_c) {
  validate(seq_a);
  if (open_l.atoms() != seq_a.k) throw Error(ErrorKind::ShapeMismatch, "open set over another lattice");
  if (!is_upset(open_l)) throw Error(ErrorKind::HypothesisFailed, "L is not open");
  DiffSequence out{seq_a.k, {}};
  if (mode == TransformMode::IntersectOpen) {
    for (const Family& u : seq_a.upsets) out.upsets.push_back(u & open_l);
    return out;
  }
  if (!seq_c) throw Error(ErrorKind::InvalidInput, "union_disjoint needs a second sequence");
  validate(*seq_c);
  if (seq_c->k != seq_a.k) throw Error(ErrorKind::ShapeMismatch, "sequences over different lattices");
  const Family c = evaluate_difference(*seq_c);
  const Family d = evaluate_difference(seq_a);
  if (!(c - open_l).empty()) throw Error(ErrorKind::HypothesisFailed, "C is not contained in L");
  if (!(open_l & d).empty()) throw Error(ErrorKind::HypothesisFailed, "L meets D");
  for (const Family& v : seq_c->upsets) out.upsets.push_back(v & open_l);
  // Pad seq_a to even length so the C-part keeps its parity.
  if (seq_a.length() % 2) out.upsets.push_back(open_l);
  for (const Family& v : seq_a.upsets) out.upsets.push_back(v | open_l);
  return out;
}

}  // namespace wadge
