#pragma once

#include <cstdint>
#include <optional>

#include "trank/subsets.hpp"
#include "trank/tensor.hpp"
#include "trank/wideint.hpp"

namespace trank {

// The partition tensor of order k: axes indexed by the k-subsets of [3k] in
// colex order, coefficient 1 exactly on ordered triples (S, T, U) that
// partition [3k]. Support size C(3k,k) * C(2k,k). Guarded to k <= 4.
SparseTensor partition_tensor(int k);

// Exhaustive check (k <= 3) that S -> sum_{i in S} 4^i is injective and that
// f(S)+f(T)+f(U) hits sum_{i=1}^{3k} 4^i exactly on the support.
bool verify_tightness(int k);

// Element of Z_2^{3k-1}; the coordinate for element e in {2..3k} is bit e-2.
struct GroupLabel {
  std::uint64_t bits = 0;
  int len = 0;

  bool operator==(const GroupLabel& o) const = default;
};

// S -> indicator of S \ {1}. Injective on k-subsets, and the label sum of a
// triple is all-ones exactly when the triple is disjoint.
GroupLabel group_map_f(const SubsetMask& s, int k);

// Exhaustive check of the disjointness iff over all triples of k-subsets (k <= 3).
bool verify_group_map(int k);

// Character-sum decomposition of the partition tensor: one rank-one term per
// character of Z_2^{3k-1}, i.e. 2^{3k-1} terms. For k <= 3 the label map is
// re-verified first; if that ever failed the construction would fall back to
// the 2^{3k}-term variant (used_fallback reports which one was built).
Decomposition group_decomposition(int k, const FieldContext& ctx, bool* used_fallback = nullptr);

// Same construction over the full group Z_2^{3k} with the plain indicator
// map; 2^{3k} terms, valid for every k unconditionally.
Decomposition naive_group_decomposition(int k, const FieldContext& ctx);

struct CertificationResult {
  bool valid = false;
  bool exact = false;  // false: random-evaluation certificate only
  int trials = 0;
};

// Exact expansion check for k <= 3; for k = 4 compares decomposition
// evaluations against the sparse tensor at random points (1000 trials).
CertificationResult certify_decomposition(const Decomposition& d, int k, Rng& rng);

struct RankBounds {
  int k = 0;
  Rational lower_threshold;       // 8^k C(3k,k) C(2k,k) / 27^k
  Rational lower_threshold_weak;  // (2/9) 8^k / k
  Rational upper_bound;           // 8^k / 2
  std::optional<WideInt> candidate_rank;
  bool candidate_below_threshold = false;
};

RankBounds rank_bounds(int k, std::optional<WideInt> candidate_rank = std::nullopt);

}  // namespace trank
