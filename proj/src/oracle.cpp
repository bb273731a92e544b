#include "wadgelab/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <thread>

#include "wadgelab/error.hpp"

namespace wadge {

namespace {

unsigned resolve_threads(unsigned threads) {
  if (threads) return threads;
  if (const char* env = std::getenv("WADGELAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

bool same_report(const LevelReport& a, const LevelReport& b) {
  return a.level == b.level && a.side == b.side;
}

}  // namespace

LevelSweep level_sweep(int k, unsigned threads) {
  const FiniteLattice lat(k);
  if (k > FiniteLattice::kMaxEnumerableAtoms)
    throw Error(ErrorKind::ResourceBound, "level sweep needs k <= 4");
  LevelSweep sweep;
  sweep.k = k;
  sweep.families = std::uint64_t{1} << lat.size();
  const unsigned t = std::min<std::uint64_t>(resolve_threads(threads), sweep.families);
  std::vector<std::vector<LevelMismatch>> found(t);
  auto work = [&](unsigned id) {
    for (std::uint64_t bits = id; bits < sweep.families; bits += t) {
      const Family f(k, bits);
      LevelReport c = chain_level(f);
      LevelReport b = brute_force_level(f);
      if (!same_report(c, b)) found[id].push_back({f, std::move(c), std::move(b)});
    }
  };
  if (t <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < t; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  for (auto& v : found)
    for (auto& m : v) sweep.mismatches.push_back(std::move(m));
  std::sort(sweep.mismatches.begin(), sweep.mismatches.end(),
            [](const LevelMismatch& a, const LevelMismatch& b) { return a.family.bits() < b.family.bits(); });
  return sweep;
}

HardnessCase hardness_case(const Family& h, unsigned n, const SearchOptions& options) {
  const int k = h.atoms();
  HardnessCase hc;
  hc.h = h;
  hc.n = n;
  hc.chain_exists = longest_alternating_chain(h).length >= n + 1;
  const auto& bitmap = difference_class(k, n);
  const std::uint64_t families = std::uint64_t{1} << (1u << k);
  hc.all_reduce = true;
  for (std::uint64_t bits = 0; bits < families; ++bits) {
    if (!((bitmap[bits / 64] >> (bits % 64)) & 1)) continue;
    ++hc.searched;
    const Family a(k, bits);
    if (!search_reduction(a, h, SearchConstraint::any(), options)) {
      hc.all_reduce = false;
      hc.blocked = a;
      break;
    }
  }
  return hc;
}

std::size_t HardnessSweep::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const HardnessCase& c) { return !c.agrees(); }));
}

HardnessSweep hardness_sweep(int k, unsigned max_n, const SearchOptions& options) {
  const FiniteLattice lat(k);
  HardnessSweep sweep;
  sweep.k = k;
  const std::uint64_t families = std::uint64_t{1} << lat.size();
  for (unsigned n = 1; n <= max_n; ++n)
    for (std::uint64_t bits = 0; bits < families; ++bits)
      sweep.cases.push_back(hardness_case(Family(k, bits), n, options));
  return sweep;
}

HardnessSweep hardness_sample(int k, unsigned max_n, std::size_t samples, std::uint64_t seed,
                              const SearchOptions& options) {
  const FiniteLattice lat(k);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = lat.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lat.size()) - 1;
  std::uniform_int_distribution<unsigned> level(1, std::max(1u, max_n));
  HardnessSweep sweep;
  sweep.k = k;
  for (std::size_t i = 0; i < samples; ++i) {
    const Family h(k, rng() & mask);
    sweep.cases.push_back(hardness_case(h, level(rng), options));
  }
  return sweep;
}

}  // namespace wadge
