#include "wadgelab/lattice.hpp"

#include <bit>
#include <sstream>

#include "wadgelab/error.hpp"
#include "wadgelab/simd.hpp"

namespace wadge {
namespace {

void check_same(const Family& a, const Family& b) {
  if (a.atoms() != b.atoms()) throw Error(ErrorKind::ShapeMismatch, "families over different lattices");
}

}  // namespace

FiniteLattice::FiniteLattice(int k) : k_(k) {
  if (k < 0 || k > kMaxAtoms)
    throw Error(ErrorKind::InvalidInput, "lattice atoms must be in [0, 6], got " + std::to_string(k));
}

Family::Family(int k, std::uint64_t bits) : k_(FiniteLattice(k).atoms()), bits_(bits) {
  if (bits & ~universe()) throw Error(ErrorKind::InvalidInput, "family has points outside the lattice");
}

std::uint64_t Family::universe() const {
  return k_ == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << k_)) - 1;
}

Family Family::whole(int k) {
  Family f(k);
  f.bits_ = f.universe();
  return f;
}

Family Family::from_points(int k, std::span<const Point> points) {
  const FiniteLattice lattice(k);
  std::uint64_t bits = 0;
  for (Point p : points) {
    if (!lattice.contains(p)) throw Error(ErrorKind::InvalidInput, "point outside the lattice");
    bits |= std::uint64_t{1} << p;
  }
  return Family(k, bits);
}

Family Family::from_points(int k, std::initializer_list<Point> points) {
  return from_points(k, std::span<const Point>(points.begin(), points.size()));
}

std::uint32_t Family::count() const { return std::popcount(bits_); }

std::vector<Point> Family::points() const {
  std::vector<Point> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

Family operator|(const Family& a, const Family& b) {
  check_same(a, b);
  return Family(a.k_, a.bits_ | b.bits_);
}

Family operator&(const Family& a, const Family& b) {
  check_same(a, b);
  return Family(a.k_, a.bits_ & b.bits_);
}

Family operator-(const Family& a, const Family& b) {
  check_same(a, b);
  return Family(a.k_, a.bits_ & ~b.bits_);
}

std::string Family::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Point p : points()) {
    out << (first ? "" : ",") << '{';
    bool inner = true;
    for (int i = 0; i < k_; ++i)
      if ((p >> i) & 1) {
        out << (inner ? "" : ",") << i;
        inner = false;
      }
    out << '}';
    first = false;
  }
  out << '}';
  return out.str();
}

bool is_upset(const Family& f) {
  const simd::Word w = f.bits();
  std::uint8_t ok = 0;
  simd::batch_is_upset(f.atoms(), std::span<const simd::Word>(&w, 1), std::span<std::uint8_t>(&ok, 1));
  return ok;
}

bool is_downset(const Family& f) { return is_upset(f.complement()); }

Family upward_closure(const Family& f) {
  const simd::Word w = f.bits();
  simd::Word out = 0;
  simd::batch_upward_closure(f.atoms(), std::span<const simd::Word>(&w, 1), std::span<simd::Word>(&out, 1));
  return Family(f.atoms(), out);
}

Family downward_closure(const Family& f) {
  // Down-closure of F is the complement of the largest upset missing F,
  // i.e. mirror the lattice through complementation of points.
  const FiniteLattice lattice = f.lattice();
  std::uint64_t mirrored = 0;
  for (Point p : f.points()) mirrored |= std::uint64_t{1} << (lattice.top() ^ p);
  const Family up = upward_closure(Family(f.atoms(), mirrored));
  std::uint64_t out = 0;
  for (Point p : up.points()) out |= std::uint64_t{1} << (lattice.top() ^ p);
  return Family(f.atoms(), out);
}

Family basic_open(const FiniteLattice& lattice, Point a) {
  if (!lattice.contains(a)) throw Error(ErrorKind::InvalidInput, "point outside the lattice");
  return upward_closure(Family(lattice.atoms(), std::uint64_t{1} << a));
}

std::uint64_t family_count(const FiniteLattice& lattice) {
  if (lattice.atoms() > FiniteLattice::kMaxEnumerableAtoms)
    throw Error(ErrorKind::ResourceBound, "family enumeration needs k <= 4");
  return std::uint64_t{1} << lattice.size();
}

std::vector<Family> all_upsets(const FiniteLattice& lattice) {
  const std::uint64_t total = family_count(lattice);
  std::vector<Family> out;
  constexpr std::size_t kBatch = 4096;
  std::vector<simd::Word> batch(kBatch);
  std::vector<std::uint8_t> flags(kBatch);
  for (std::uint64_t start = 0; start < total; start += kBatch) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - start));
    for (std::size_t i = 0; i < n; ++i) batch[i] = start + i;
    simd::batch_is_upset(lattice.atoms(), std::span<const simd::Word>(batch.data(), n),
                         std::span<std::uint8_t>(flags.data(), n));
    for (std::size_t i = 0; i < n; ++i)
      if (flags[i]) out.emplace_back(lattice.atoms(), batch[i]);
  }
  return out;
}

FinitePresentation::FinitePresentation(std::size_t n,
                                       std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  if (n > kMaxSize) throw Error(ErrorKind::ResourceBound, "presentation larger than 64 elements");
  below_.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) below_[j] = std::uint64_t{1} << j;
  for (auto [i, j] : pairs) {
    if (i >= n || j >= n) throw Error(ErrorKind::InvalidInput, "way-below pair out of range");
    below_[j] |= std::uint64_t{1} << i;
  }
  // Warshall closure on row masks.
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j)
      if ((below_[j] >> m) & 1) below_[j] |= below_[m];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (way_below(i, j) && way_below(j, i))
        throw Error(ErrorKind::InvalidInput, "way-below relation has a cycle");
}

FinitePresentation FinitePresentation::from_lattice(const FiniteLattice& lattice) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (Point p = 0; p < lattice.size(); ++p)
    for (Point q = 0; q < lattice.size(); ++q)
      if (p != q && point_subset(p, q)) pairs.emplace_back(p, q);
  return FinitePresentation(lattice.size(), pairs);
}

FinitePresentation FinitePresentation::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return FinitePresentation(n, pairs);
}

std::uint64_t FinitePresentation::up_mask(std::size_t i) const {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < size(); ++j)
    if (way_below(i, j)) out |= std::uint64_t{1} << j;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePresentation::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (way_below(i, j)) out.emplace_back(i, j);
  return out;
}

std::uint64_t FinitePresentation::all_mask() const {
  return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

bool FinitePresentation::is_upset(std::uint64_t mask) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (((mask >> i) & 1) && (up_mask(i) & ~mask)) return false;
  return true;
}

std::vector<std::uint64_t> FinitePresentation::all_upsets() const {
  if (size() > 20) throw Error(ErrorKind::ResourceBound, "upset enumeration needs n <= 20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m <= all_mask(); ++m)
    if (is_upset(m)) out.push_back(m);
  return out;
}

}  // namespace wadge
