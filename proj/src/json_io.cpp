#include "wadgelab/json_io.hpp"

#include <algorithm>

#include "wadgelab/error.hpp"

namespace wadge::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint64_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(std::string(what) + " must be a natural number");
  return j.get<std::uint64_t>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  return j;
}

FiniteSet naturals(const Json& j, const char* what) {
  FiniteSet out;
  for (const auto& v : array(j, what)) out.push_back(natural(v, what));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json set_array(const FiniteSet& s) {
  Json out = Json::array();
  for (auto v : s) out.push_back(v);
  return out;
}

int lattice_k(const Json& j, int default_k) {
  if (j.is_object() && j.contains("k")) {
    const std::uint64_t k = natural(j.at("k"), "k");
    if (k > static_cast<std::uint64_t>(FiniteLattice::kMaxAtoms)) bad("k must be at most 6");
    return static_cast<int>(k);
  }
  if (default_k < 0) bad("missing field \"k\"");
  return default_k;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

Json ordinal(const Ordinal& a) {
  Json terms = Json::array();
  for (const auto& t : a.terms()) terms.push_back({t.exponent, t.coefficient});
  return {{"cnf", terms}};
}

Ordinal to_ordinal(const Json& j) {
  if (j.is_number_integer()) return Ordinal::natural(natural(j, "ordinal"));
  std::vector<CnfTerm> terms;
  for (const auto& t : array(field(j, "cnf"), "cnf")) {
    if (!t.is_array() || t.size() != 2) bad("cnf terms are [exponent, coefficient] pairs");
    const std::uint64_t e = natural(t[0], "exponent");
    if (e > 64) bad("exponent too large");
    terms.push_back({static_cast<std::uint32_t>(e), natural(t[1], "coefficient")});
  }
  return Ordinal::from_terms(std::move(terms));
}

Json upset(const UPSet& s) {
  return {{"explicit", set_array(s.explicit_elements())},
          {"threshold", s.threshold()},
          {"period", s.period()},
          {"residues", set_array(s.residues())}};
}

UPSet to_upset(const Json& j) {
  if (!j.is_object()) bad("a set must be a JSON object");
  if (j.contains("ap")) {
    const auto& ap = array(j.at("ap"), "ap");
    if (ap.size() != 2) bad("ap is [offset, step]");
    return UPSet::make_ap(natural(ap[0], "offset"), natural(ap[1], "step"));
  }
  if (j.contains("finite")) return UPSet::finite(naturals(j.at("finite"), "finite"));
  if (j.contains("union")) {
    UPSet out;
    for (const auto& part : array(j.at("union"), "union")) out = out | to_upset(part);
    return out;
  }
  const std::uint64_t threshold = natural(field(j, "threshold"), "threshold");
  const std::uint64_t period = natural(field(j, "period"), "period");
  const FiniteSet ex = j.contains("explicit") ? naturals(j.at("explicit"), "explicit") : FiniteSet{};
  const FiniteSet res = naturals(field(j, "residues"), "residues");
  return UPSet::from_parts(threshold, ex, period, res);
}

Json point(Point p) {
  Json out = Json::array();
  for (unsigned i = 0; i < 32; ++i)
    if ((p >> i) & 1) out.push_back(i);
  return out;
}

Point to_point(const Json& j, int k) {
  Point p = 0;
  for (const auto& a : array(j, "point")) {
    const std::uint64_t atom = natural(a, "atom");
    if (atom >= static_cast<std::uint64_t>(k)) bad("atom " + std::to_string(atom) + " outside P_" + std::to_string(k));
    p |= Point{1} << atom;
  }
  return p;
}

Json family(const Family& f) {
  Json pts = Json::array();
  for (Point p : f.points()) pts.push_back(point(p));
  return {{"k", f.atoms()}, {"points", pts}};
}

Family to_family(const Json& j, int default_k) {
  const int k = lattice_k(j, default_k);
  std::vector<Point> pts;
  for (const auto& p : array(field(j, "points"), "points")) pts.push_back(to_point(p, k));
  return Family::from_points(k, pts);
}

Json chain(const AltChain& c) {
  Json out = Json::array();
  for (Point p : c.elements) out.push_back(point(p));
  return out;
}

AltChain to_chain(const Json& j, int k) {
  AltChain c;
  for (const auto& p : array(j, "chain")) c.elements.push_back(to_point(p, k));
  return c;
}

Json diff_sequence(const DiffSequence& s) {
  Json ups = Json::array();
  for (const auto& u : s.upsets) ups.push_back(family(u));
  return {{"k", s.k}, {"upsets", ups}};
}

DiffSequence to_diff_sequence(const Json& j, int default_k) {
  DiffSequence s;
  s.k = lattice_k(j, default_k);
  for (const auto& u : array(field(j, "upsets"), "upsets")) s.upsets.push_back(to_family(u, s.k));
  return s;
}

Json level_report(const LevelReport& r) {
  return {{"level", r.level},
          {"side", std::string(side_name(r.side))},
          {"witness", chain(r.witness)},
          {"co_witness", chain(r.co_witness)}};
}

Json monotone_map(const MonotoneMap& f) {
  Json table = Json::array();
  for (Point p : f.table()) table.push_back(point(p));
  return {{"j", f.source_atoms()}, {"k", f.target_atoms()}, {"table", table}};
}

MonotoneMap to_monotone_map(const Json& j) {
  const std::uint64_t src = natural(field(j, "j"), "j");
  const std::uint64_t dst = natural(field(j, "k"), "k");
  if (src > 6 || dst > 6) bad("map dimensions must be at most 6");
  std::vector<Point> table;
  for (const auto& p : array(field(j, "table"), "table")) {
    if (p.is_number_integer()) table.push_back(static_cast<Point>(natural(p, "table entry")));
    else table.push_back(to_point(p, static_cast<int>(dst)));
  }
  return MonotoneMap(static_cast<int>(src), static_cast<int>(dst), std::move(table));
}

Json tribool(const TriBool& t) {
  switch (t.value) {
    case Truth::In: return "in";
    case Truth::Out: return "out";
    case Truth::Unknown: break;
  }
  return {{"unknown", t.depth}};
}

Sigma2Family to_sigma2_family(const Json& j) {
  auto side = [&](const char* key) {
    std::vector<std::vector<FiniteSet>> lists;
    if (!j.contains(key)) return lists;
    for (const auto& level : array(j.at(key), key)) {
      std::vector<FiniteSet> sets;
      for (const auto& s : array(level, key)) sets.push_back(naturals(s, key));
      lists.push_back(std::move(sets));
    }
    return lists;
  };
  if (!j.is_object()) bad("a Sigma2 family must be a JSON object");
  return Sigma2Family::from_lists(side("a"), side("b"));
}

Json presentation(const FinitePresentation& p) {
  Json pairs = Json::array();
  for (const auto& [i, k] : p.relation())
    if (i != k) pairs.push_back({i, k});
  return {{"n", p.size()}, {"pairs", pairs}};
}

FinitePresentation to_presentation(const Json& j) {
  const std::uint64_t n = natural(field(j, "n"), "n");
  if (n > FinitePresentation::kMaxSize) bad("presentation too large");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (j.contains("pairs"))
    for (const auto& p : array(j.at("pairs"), "pairs")) {
      if (!p.is_array() || p.size() != 2) bad("pairs are [i, j]");
      pairs.emplace_back(natural(p[0], "index"), natural(p[1], "index"));
    }
  return FinitePresentation(n, pairs);
}

Json tree(const BTree& t) {
  Json nodes = Json::array();
  for (const auto& s : t.nodes()) nodes.push_back(s);
  return {{"nodes", nodes}};
}

BTree to_tree(const Json& j) {
  std::vector<Sequence> nodes;
  for (const auto& s : array(field(j, "nodes"), "nodes")) {
    Sequence seq;
    for (const auto& v : array(s, "node")) seq.push_back(natural(v, "node entry"));
    nodes.push_back(std::move(seq));
  }
  return BTree(std::move(nodes));
}

}  // namespace wadge::json
