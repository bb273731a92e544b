// wadgelab: batch front end for classification, reduction search,
// constructions and the oracle suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wadgelab/constructions.hpp"
#include "wadgelab/effective.hpp"
#include "wadgelab/error.hpp"
#include "wadgelab/hierarchy.hpp"
#include "wadgelab/json_io.hpp"
#include "wadgelab/oracle.hpp"
#include "wadgelab/reduction.hpp"

using namespace wadge;
using wadge::json::Json;

namespace {

enum Exit { kOk = 0, kUnknown = 2, kResource = 3, kInvalid = 4 };

struct Common {
  std::uint64_t depth = 256;
  std::uint64_t max_nodes = 50'000'000;
  std::string format = "json";
  std::uint64_t seed = 1;
};

// Inline JSON, or a path to a file holding it.
Json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"' ||
                                     std::isdigit(static_cast<unsigned char>(arg[first]))))
    return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read input '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) print_text(value, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Json& j, const Common& c) {
  if (c.format == "text") print_text(j, "", std::cout);
  else std::cout << json::dump(j) << "\n";
}

SearchOptions search_options(const Common& c) {
  SearchOptions o;
  o.max_nodes = c.max_nodes;
  return o;
}

// ---- verbs ----

Json classify(const Family& f, bool brute) {
  const LevelReport r = chain_level(f);
  Json out = json::level_report(r);
  out["verb"] = "classify";
  out["family"] = json::family(f);
  if (brute) {
    const LevelReport b = brute_force_level(f);
    out["brute_force"] = {{"level", b.level}, {"side", std::string(side_name(b.side))}};
  }
  return out;
}

Json chain_verb(const Family& f, const std::optional<AltChain>& check) {
  Json out{{"verb", "chain"}, {"family", json::family(f)}};
  if (check) {
    out["chain"] = json::chain(*check);
    out["alternating"] = is_alternating_chain(f, *check);
    out["special"] = is_special_chain(f, *check);
    return out;
  }
  const ChainResult r = longest_alternating_chain(f);
  out["length"] = r.length;
  out["witness"] = json::chain(r.witness);
  return out;
}

Json reduce_verb(const Family& a, const Family& b, const SearchConstraint& c, const SearchOptions& o) {
  SearchStats stats;
  const auto map = search_reduction(a, b, c, o, &stats);
  Json out{{"verb", "reduce"},
           {"A", json::family(a)},
           {"B", json::family(b)},
           {"mode", c.to_string()},
           {"nodes", stats.nodes}};
  if (map) {
    out["result"] = "found";
    out["map"] = json::monotone_map(*map);
  } else {
    out["result"] = "none";
  }
  return out;
}

Json sets(const std::vector<UPSet>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(json::upset(x));
  return out;
}

Json construct_verb(const std::string& name, const Json& params, const Common& c) {
  Json out{{"verb", "construct"}, {"name", name}};
  if (name == "special-chain") {
    SpecialChain sc = [&] {
      if (params.contains("alpha")) {
        std::vector<Ordinal> betas;
        if (params.contains("betas"))
          for (const auto& b : params.at("betas")) betas.push_back(json::to_ordinal(b));
        return special_chain(json::to_ordinal(params.at("alpha")), betas);
      }
      return special_chain(params.value("n", std::uint64_t{1}));
    }();
    Json idx = Json::array(), member = Json::array();
    for (std::size_t i = 0; i < sc.indices.size(); ++i) {
      idx.push_back(json::ordinal(sc.indices[i]));
      member.push_back(json::tribool(sc.family(sc.elements[i], c.depth)));
    }
    out["alpha"] = json::ordinal(sc.alpha);
    out["indices"] = idx;
    out["chain"] = sets(sc.elements);
    out["membership"] = member;
    return out;
  }
  if (name == "trio") {
    const int k = params.value("k", 4);
    const auto t = counterexample_trio_truncated(k);
    out["O1"] = json::family(t.o1);
    out["O2"] = json::family(t.o2);
    out["O3"] = json::family(t.o3);
    out["f"] = json::monotone_map(t.f);
    out["g"] = json::monotone_map(t.g);
    out["f_reduces_O2_O1"] = check_reduction(t.f, t.o2, t.o1);
    out["g_reduces_O3_O1"] = check_reduction(t.g, t.o3, t.o1);
    out["g_reduces_O3_O2"] = check_reduction(t.g, t.o3, t.o2);
    return out;
  }
  if (name == "duality") {
    const auto w = duality_failure_witness();
    const auto rep = w.check(identity_map(), c.depth);
    out["X"] = "B{0}";
    out["Y"] = "FIN";
    out["identity_check"] = {{"contradiction", rep.contradiction},
                             {"exact", rep.exact},
                             {"failing_point", rep.failing_point},
                             {"reason", rep.reason}};
    return out;
  }
  if (name == "bt") {
    const BTree t = json::to_tree(params);
    Json labels = Json::array();
    for (const auto& s : t.nodes())
      labels.push_back({{"node", s}, {"xi", t.xi(s)}, {"e", t.e(s)}});
    out["tree"] = json::tree(t);
    out["labels"] = labels;
    return out;
  }
  if (name == "y-alpha-beta") {
    const BTree t = params.contains("tree") ? json::to_tree(params.at("tree")) : BTree::root_only();
    const auto y = y_alpha_beta(json::to_ordinal(params.at("alpha")), json::to_ordinal(params.at("beta")), t);
    Json idx = Json::array(), member = Json::array();
    for (std::size_t i = 0; i < y.chain.size(); ++i) {
      idx.push_back(json::ordinal(y.chain_indices[i]));
      member.push_back(json::tribool(y.y(y.chain[i], c.depth)));
    }
    out["alpha"] = json::ordinal(y.alpha);
    out["beta"] = json::ordinal(y.beta);
    out["proper_hypothesis"] = y.proper_hypothesis;
    out["indices"] = idx;
    out["chain"] = sets(y.chain);
    out["membership"] = member;
    if (params.contains("gamma")) {
      const auto f = y_alpha_beta_map(y.alpha, y.beta, json::to_ordinal(params.at("gamma")));
      Json images = Json::array();
      for (const auto& x : y.chain) images.push_back(json::upset(f.exact(x)));
      out["map"] = f.name();
      out["images"] = images;
    }
    return out;
  }
  if (name == "r-chain") {
    std::vector<PatternEntry> pattern;
    if (params.contains("pattern")) {
      for (const auto& e : params.at("pattern")) {
        const auto& q = e.at("q");
        const Rational r = q.is_array() ? Rational::make(q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>())
                                        : Rational::make(q.get<std::int64_t>());
        pattern.push_back({r, e.at("z").get<std::int64_t>(), e.at("in").get<bool>()});
      }
    } else {
      pattern = standard_pattern(params.value("rationals", std::size_t{3}), params.value("zmin", std::int64_t{-2}),
                                 params.value("zmax", std::int64_t{2}));
    }
    const RChain rc = r_chain(pattern);
    Json pts = Json::array();
    for (const auto& p : rc.points) {
      Json idx = p.index.is_gap ? Json{{"gap", p.index.gap}}
                                : Json{{"q", p.index.q.to_string()}, {"z", p.index.z}};
      pts.push_back({{"index", idx}, {"expected", p.expected}, {"s2", s2_membership(p.set)},
                     {"set", json::upset(p.set)}});
    }
    out["points"] = pts;
    return out;
  }
  if (name == "s2-inc-chain") {
    const auto xs = increasing_s2_chain(params.value("m", std::size_t{4}));
    Json member = Json::array();
    for (const auto& x : xs) member.push_back(s2_membership(x));
    out["chain"] = sets(xs);
    out["s2"] = member;
    return out;
  }
  if (name == "complete-not-11") {
    if (params.contains("k")) {
      const auto h = complete_not_one_to_one_finite(params.at("k").get<int>(), params.value("n", 2u));
      out["H"] = json::family(h.h);
      out["sequence"] = json::diff_sequence(h.seq);
      out["chain"] = json::chain(h.chain);
      return out;
    }
    const auto h = complete_not_one_to_one(params.value("n", std::uint64_t{2}));
    Json member = Json::array();
    for (const auto& x : h.chain) member.push_back(json::tribool(h.h(x, c.depth)));
    out["parts"] = sets(h.parts);
    out["chain"] = sets(h.chain);
    out["membership"] = member;
    return out;
  }
  throw Error(ErrorKind::InvalidInput, "unknown construction '" + name + "'");
}

Json level_suite(int k) {
  const LevelSweep s = level_sweep(k);
  Json mism = Json::array();
  for (const auto& m : s.mismatches)
    mism.push_back({{"family", json::family(m.family)},
                    {"chain", json::level_report(m.by_chain)},
                    {"brute_force", json::level_report(m.by_brute_force)}});
  return {{"k", k}, {"families", s.families}, {"mismatches", mism}, {"ok", s.ok()}};
}

Json hardness_suite(const HardnessSweep& s) {
  Json bad = Json::array();
  for (const auto& c : s.cases)
    if (!c.agrees()) bad.push_back({{"H", json::family(c.h)}, {"n", c.n}, {"chain", c.chain_exists}, {"all_reduce", c.all_reduce}});
  return {{"k", s.k}, {"cases", s.cases.size()}, {"disagreements", bad}, {"ok", bad.empty()}};
}

// Re-checks a report produced by another verb.
Json verify(const Json& report, const Common& c) {
  const std::string verb = report.value("verb", "");
  Json out{{"verb", "oracle"}, {"verified", verb}};
  bool ok = false;
  if (verb == "classify") {
    const Family f = json::to_family(report.at("family"));
    const LevelReport b = brute_force_level(f);
    const AltChain w = json::to_chain(report.at("witness"), f.atoms());
    const AltChain cw = json::to_chain(report.at("co_witness"), f.atoms());
    ok = b.level == report.at("level").get<unsigned>() && side_name(b.side) == report.at("side").get<std::string>() &&
         (w.empty() || is_alternating_chain(f, w)) && (cw.empty() || is_alternating_chain(f.complement(), cw));
  } else if (verb == "reduce") {
    const Family a = json::to_family(report.at("A"));
    const Family b = json::to_family(report.at("B"));
    const SearchConstraint mode = SearchConstraint::parse(report.at("mode").get<std::string>());
    if (report.at("result") == "found") {
      const MonotoneMap f = json::to_monotone_map(report.at("map"));
      ok = check_reduction(f, a, b) && mode.admits(f);
    } else {
      ok = !search_reduction(a, b, mode, search_options(c)).has_value();
    }
  } else if (verb == "chain") {
    const Family f = json::to_family(report.at("family"));
    const AltChain w = json::to_chain(report.contains("witness") ? report.at("witness") : report.at("chain"), f.atoms());
    ok = w.empty() || is_alternating_chain(f, w);
    if (report.contains("length")) ok = ok && longest_alternating_chain(f).length == report.at("length").get<std::size_t>();
  } else {
    throw Error(ErrorKind::InvalidInput, "no verifier for verb '" + verb + "'");
  }
  out["ok"] = ok;
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ResourceBound:
    case ErrorKind::BoundExceeded:
      return kResource;
    default:
      return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wadgelab: Wadge hierarchy toolkit for finite lattices and P(N)"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--depth", c.depth, "TriBool budget")->capture_default_str();
  app.add_option("--max-nodes", c.max_nodes, "Search node budget")->capture_default_str();
  app.add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for random corpora")->capture_default_str();

  int k = -1;
  std::string family_arg, chain_arg, a_arg, b_arg, mode = "any", params = "{}", name, set_arg, sigma_arg,
                                                   pres_arg, suite = "levels", verify_arg, s_arg;
  bool brute = false;
  unsigned max_n = 3, n_level = 1;
  std::size_t samples = 0, element = 0;
  bool has_element = false;

  auto* classify_cmd = app.add_subcommand("classify", "Level and side of a family on P_k");
  classify_cmd->add_option("--k", k);
  classify_cmd->add_option("--family", family_arg)->required();
  classify_cmd->add_flag("--brute", brute, "Also run the brute-force oracle");

  auto* chain_cmd = app.add_subcommand("chain", "Longest alternating chain, or check a given chain");
  chain_cmd->add_option("--k", k);
  chain_cmd->add_option("--family", family_arg)->required();
  chain_cmd->add_option("--check", chain_arg, "Chain (top first) to test");

  auto* reduce_cmd = app.add_subcommand("reduce", "Search a monotone reduction A -> B");
  reduce_cmd->add_option("--k", k);
  reduce_cmd->add_option("--A", a_arg)->required();
  reduce_cmd->add_option("--B", b_arg)->required();
  reduce_cmd->add_option("--mode", mode, "any, 1to1 or fto1:<b>")->capture_default_str();

  auto* construct_cmd = app.add_subcommand("construct", "Emit a named construction");
  construct_cmd->add_option("name", name)->required();
  construct_cmd->add_option("--params", params)->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "Run a cross-check suite or verify a report");
  oracle_cmd->add_option("--suite", suite, "levels, hardness or hardness-sample")->capture_default_str();
  oracle_cmd->add_option("--k", k);
  oracle_cmd->add_option("--max-n", max_n)->capture_default_str();
  oracle_cmd->add_option("--samples", samples);
  oracle_cmd->add_option("--verify", verify_arg, "Report produced by another verb");

  auto* s2_cmd = app.add_subcommand("s2", "S2 membership, or a Sigma2 family and its reduction image");
  s2_cmd->add_option("--set", set_arg)->required();
  s2_cmd->add_option("--family", sigma_arg, "Sigma2 family lists");

  auto* embed_cmd = app.add_subcommand("embed", "phi embedding of a finite presentation");
  embed_cmd->add_option("--presentation", pres_arg)->required();
  embed_cmd->add_option("--element", element);
  embed_cmd->add_option("--probe", set_arg, "Set to test for being an image point");

  auto* universal_cmd = app.add_subcommand("universal", "Slices of the universal family built from S");
  universal_cmd->add_option("--k", k)->required();
  universal_cmd->add_option("--S", s_arg)->required();
  universal_cmd->add_option("--n", n_level)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }
  has_element = embed_cmd->count("--element") > 0;

  try {
    Json out;
    int code = kOk;
    if (*classify_cmd) {
      out = classify(json::to_family(load(family_arg), k), brute);
    } else if (*chain_cmd) {
      const Family f = json::to_family(load(family_arg), k);
      std::optional<AltChain> check;
      if (!chain_arg.empty()) check = json::to_chain(load(chain_arg), f.atoms());
      out = chain_verb(f, check);
    } else if (*reduce_cmd) {
      out = reduce_verb(json::to_family(load(a_arg), k), json::to_family(load(b_arg), k),
                        SearchConstraint::parse(mode), search_options(c));
    } else if (*construct_cmd) {
      out = construct_verb(name, load(params), c);
    } else if (*oracle_cmd) {
      if (!verify_arg.empty()) {
        out = verify(load(verify_arg), c);
      } else if (suite == "levels") {
        Json all = Json::array();
        for (int kk = (k < 0 ? 1 : k); kk <= (k < 0 ? 3 : k); ++kk) all.push_back(level_suite(kk));
        out = {{"verb", "oracle"}, {"suite", suite}, {"results", all}};
      } else if (suite == "hardness") {
        out = {{"verb", "oracle"}, {"suite", suite},
               {"results", hardness_suite(hardness_sweep(k < 0 ? 2 : k, max_n, search_options(c)))}};
      } else if (suite == "hardness-sample") {
        out = {{"verb", "oracle"}, {"suite", suite},
               {"results", hardness_suite(hardness_sample(k < 0 ? 3 : k, max_n, samples ? samples : 50, c.seed,
                                                          search_options(c)))}};
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
      }
    } else if (*s2_cmd) {
      const UPSet x = json::to_upset(load(set_arg));
      out = {{"verb", "s2"}, {"set", json::upset(x)}};
      if (sigma_arg.empty()) {
        out["member"] = s2_membership(x);
      } else {
        const Sigma2Family fam = json::to_sigma2_family(load(sigma_arg));
        const TriBool t = sigma2_membership(fam, x, c.depth);
        const EffectiveMap f = s2_reduction(fam);
        const UPSet image = f.exact(x);
        out["member"] = json::tribool(t);
        out["image"] = json::upset(image);
        out["image_in_s2"] = s2_membership(image);
        if (!t.decided()) code = kUnknown;
      }
    } else if (*embed_cmd) {
      const FinitePresentation p = json::to_presentation(load(pres_arg));
      out = {{"verb", "embed"}, {"presentation", json::presentation(p)}};
      if (has_element) out["phi"] = json::upset(embed_phi(p, element));
      if (!set_arg.empty()) {
        const TriBool t = phi_image_check(p, json::to_upset(load(set_arg)), c.depth);
        out["image_point"] = json::tribool(t);
        if (!t.decided()) code = kUnknown;
      }
      if (!has_element && set_arg.empty()) {
        Json all = Json::array();
        for (std::size_t i = 0; i < p.size(); ++i) all.push_back(json::upset(embed_phi(p, i)));
        out["phi"] = all;
      }
    } else if (*universal_cmd) {
      const FiniteLattice lat(k);
      const Family s = json::to_family(load(s_arg), k);
      const auto r = universal_from_complete(lat, s, n_level);
      Json slices = Json::array();
      for (const auto& f : r.slices) slices.push_back(json::family(f));
      out = {{"verb", "universal"}, {"k", r.k}, {"n", r.n}, {"S", json::family(s)}, {"maps", r.maps},
             {"slices", slices}, {"complete", r.complete}, {"exact", r.exact}};
    }
    emit(out, c);
    return code;
  } catch (const Error& e) {
    std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error (invalid-input): " << e.what() << "\n";
    return kInvalid;
  }
}
