#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "trank/subsets.hpp"
#include "trank/tensor.hpp"
#include "trank/wideint.hpp"

namespace trank {

// Problem input: families F1, F2, F3 of n-subsets of [3n]; asked whether some
// triple (one set per family) partitions [3n].
struct TripartitionInstance {
  int n = 0;
  std::array<std::vector<SubsetMask>, 3> families;

  // Validates sizes and ground sets, sorts and deduplicates the families.
  static TripartitionInstance make(int n, std::array<std::vector<SubsetMask>, 3> families);
};

using TripartitionWitness = std::array<SubsetMask, 3>;

// Pair loop over F1 x F2 with a hash lookup of the complement in F3.
std::optional<TripartitionWitness> tripartition_brute(const TripartitionInstance& inst);
WideInt tripartition_count_brute(const TripartitionInstance& inst);

// In-place Walsh-Hadamard transform; size must be a power of two. Applying it
// twice multiplies by the size.
void wht_inplace(std::vector<std::int64_t>& table);

// Exact number of ordered solution triples via three transforms over Z_2^{3n}.
// Entries stay below 2^{3n} and the accumulated sum below 2^{12n}; 128-bit
// accumulation is exact under the n <= 8 guard.
WideInt tripartition_count_wht(const TripartitionInstance& inst);
bool tripartition_wht(const TripartitionInstance& inst);

// Enlarge the universe so that k divides the block size; fresh elements are
// dealt to the three families deterministically. Answer-preserving.
TripartitionInstance pad_instance(const TripartitionInstance& inst, int k);

// (C(3k,k) C(2k,k))^{n/k} / (C(3n,n) C(2n,n)): the chance that a fixed
// tripartition stays blockwise balanced under a uniform relabeling.
Rational success_probability(int n, int k);

struct TrialPlan {
  int k = 0;
  int r = 0;
  Rational p;
  std::uint64_t trials = 0;
  unsigned lambda = 0;
};

TrialPlan make_trial_plan(int n, int k, unsigned lambda);

struct TensorSolveOptions {
  unsigned lambda = 5;
  bool small_sample = false;  // draw values from {0,1,2,3} instead of the full field
  int threads = 1;
};

struct TensorSolveResult {
  bool answer = false;
  std::uint64_t trials_used = 0;
  TrialPlan plan;
};

// Randomized decider: per trial, relabel by a uniform permutation, keep the
// blockwise-balanced members, evaluate the r-th Kronecker power of the base
// tensor at random values supported on them. A nonzero value certifies a
// tripartition; no-instances never evaluate nonzero. d must be a certified
// decomposition of partition_tensor(k).
TensorSolveResult tripartition_tensor(const TripartitionInstance& inst, const Decomposition& d,
                                      int k, const TensorSolveOptions& opts, Rng& rng);

}  // namespace trank
