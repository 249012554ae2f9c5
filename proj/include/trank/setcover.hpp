#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "trank/subsets.hpp"
#include "trank/tripartition.hpp"

namespace trank {

// Cover [n] with at most t sets from a family of sets of size at most s.
struct SetCoverInstance {
  int n = 0;
  int t = 0;
  int s = 0;
  std::vector<SubsetMask> sets;

  static SetCoverInstance make(int n, int t, int s, std::vector<SubsetMask> sets);
};

// Exact DP over the 2^n subset lattice (min sets covering each mask). n <= 15.
bool setcover_brute(const SetCoverInstance& inst);

// All subsets of all members, deduplicated and sorted. Member size <= 20.
std::vector<SubsetMask> downward_closure(const std::vector<SubsetMask>& family);

// levels[m-1] (m = 1..t) holds every union of m pairwise disjoint members of
// `closed` that stays within `cap` elements, filtered afterwards to unions of
// at least `low` elements.
std::vector<std::vector<SubsetMask>> disjoint_union_dp(const std::vector<SubsetMask>& closed,
                                                       int t, int cap, int low);

using TriSolver = std::function<bool(const TripartitionInstance&)>;

struct ReduceResult {
  bool answer = false;
  bool used_fallback = false;  // 3s >= n: the balanced split is vacuous, solved brute force
  std::uint64_t solver_calls = 0;
  std::vector<std::size_t> dp_level_sizes;
};

// Reduction to balanced tripartitioning: pad the universe to a multiple of 3,
// take the downward closure, precompute disjoint unions, then for every
// budget split, every 3s-element separator S and every labeled partition of S
// hand the residual families to tri_solver.
ReduceResult reduce_and_solve(const SetCoverInstance& inst, const TriSolver& tri_solver);

}  // namespace trank
