#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wadgelab/hierarchy.hpp"
#include "wadgelab/lattice.hpp"
#include "wadgelab/reduction.hpp"

namespace wadge {

// Cross-check suites: fast structural answers against exhaustive ones.

struct LevelMismatch {
  Family family;
  LevelReport by_chain;
  LevelReport by_brute_force;
};

struct LevelSweep {
  int k = 0;
  std::uint64_t families = 0;
  std::vector<LevelMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// chain_level against brute_force_level for every family on P_k (k <= 4).
// Threads split the families (0: WADGELAB_THREADS or 1).
LevelSweep level_sweep(int k, unsigned threads = 0);

struct HardnessCase {
  Family h;
  unsigned n = 0;
  bool chain_exists = false;    // alternating chain with n+1 points in h
  bool all_reduce = false;      // every D_n family of P_k reduces to h
  std::optional<Family> blocked;  // a D_n family with no reduction, if any
  std::uint64_t searched = 0;   // D_n families examined
  bool agrees() const { return chain_exists == all_reduce; }
};

// Decides both sides of the chain/hardness equivalence for one target.
HardnessCase hardness_case(const Family& h, unsigned n, const SearchOptions& options = {});

struct HardnessSweep {
  int k = 0;
  std::vector<HardnessCase> cases;
  std::size_t disagreements() const;
};

// Every family on P_k for each n in [1, max_n]; k <= 2 keeps it quick.
HardnessSweep hardness_sweep(int k, unsigned max_n, const SearchOptions& options = {});

// Random targets on P_k with n drawn from [1, max_n].
HardnessSweep hardness_sample(int k, unsigned max_n, std::size_t samples, std::uint64_t seed,
                              const SearchOptions& options = {});

}  // namespace wadge
