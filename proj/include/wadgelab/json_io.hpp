#pragma once

#include <string>

#include "json.hpp"
#include "wadgelab/constructions.hpp"
#include "wadgelab/effective.hpp"
#include "wadgelab/hierarchy.hpp"
#include "wadgelab/lattice.hpp"
#include "wadgelab/ordinal.hpp"
#include "wadgelab/reduction.hpp"
#include "wadgelab/upset.hpp"

namespace wadge::json {

using Json = nlohmann::json;

// Parses text; InvalidInput with the byte position on malformed input.
Json parse(const std::string& text);
// Sorted keys, stable layout.
std::string dump(const Json& j);

Json ordinal(const Ordinal& a);  // {"cnf": [[exp, coeff], ...]}
Ordinal to_ordinal(const Json& j);

// Canonical {"explicit", "threshold", "period", "residues"}; input also
// accepts {"ap": [offset, step]}, {"finite": [..]} and {"union": [set, ...]}.
Json upset(const UPSet& s);
UPSet to_upset(const Json& j);

Json point(Point p);  // sorted atom list
Point to_point(const Json& j, int k);

// {"k": k, "points": [[atoms], ...]}; `k` may be omitted when default_k >= 0.
Json family(const Family& f);
Family to_family(const Json& j, int default_k = -1);

Json chain(const AltChain& c);
AltChain to_chain(const Json& j, int k);

Json diff_sequence(const DiffSequence& s);  // {"k": k, "upsets": [Family, ...]}
DiffSequence to_diff_sequence(const Json& j, int default_k = -1);

Json level_report(const LevelReport& r);

Json monotone_map(const MonotoneMap& f);  // {"j": j, "k": k, "table": [Point, ...]}
MonotoneMap to_monotone_map(const Json& j);

Json tribool(const TriBool& t);

// {"a": [[sets for n=0], ...], "b": [...]}
Sigma2Family to_sigma2_family(const Json& j);

// {"n": n, "pairs": [[i, j], ...]} with pairs meaning b_i << b_j.
Json presentation(const FinitePresentation& p);
FinitePresentation to_presentation(const Json& j);

// {"nodes": [[...], ...]}
Json tree(const BTree& t);
BTree to_tree(const Json& j);

}  // namespace wadge::json
