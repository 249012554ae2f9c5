#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "trank/util.hpp"
#include "trank/wideint.hpp"

namespace trank {

// Subset of the ground set [m], m <= 63. Element e (1-indexed) lives at bit e-1.
struct SubsetMask {
  std::uint64_t bits = 0;
  int m = 0;

  SubsetMask() = default;
  SubsetMask(std::uint64_t bits_, int m_);

  static SubsetMask empty(int m) { return SubsetMask(0, m); }
  static SubsetMask full(int m);
  static SubsetMask of_elements(const std::vector<int>& elems, int m);

  int count() const { return __builtin_popcountll(bits); }
  bool contains(int e) const { return (bits >> (e - 1)) & 1; }
  SubsetMask with(int e) const { return SubsetMask(bits | (1ull << (e - 1)), m); }
  SubsetMask without(int e) const { return SubsetMask(bits & ~(1ull << (e - 1)), m); }
  SubsetMask complement() const { return SubsetMask(~bits & full(m).bits, m); }
  bool disjoint(const SubsetMask& o) const { return (bits & o.bits) == 0; }
  bool subset_of(const SubsetMask& o) const { return (bits & ~o.bits) == 0; }
  SubsetMask unite(const SubsetMask& o) const { return SubsetMask(bits | o.bits, m); }
  SubsetMask intersect(const SubsetMask& o) const { return SubsetMask(bits & o.bits, m); }
  SubsetMask minus(const SubsetMask& o) const { return SubsetMask(bits & ~o.bits, m); }

  std::vector<int> elements() const;  // ascending, 1-indexed

  bool operator==(const SubsetMask& o) const { return bits == o.bits && m == o.m; }
  auto operator<=>(const SubsetMask& o) const = default;
};

// Exact C(n, k); 0 when k < 0 or k > n.
WideInt binomial(long long n, long long k);

// C(n, k) for n <= 63 (every such value fits in 64 bits).
std::uint64_t binomial64(int n, int k);

// Colexicographic rank of a k-subset among all k-subsets of [s.m].
std::uint64_t rank_ksubset(const SubsetMask& s, int k);
SubsetMask unrank_ksubset(std::uint64_t index, int m, int k);

// All C(m, k) subsets in colex order.
std::vector<SubsetMask> enumerate_ksubsets(int m, int k);

// Permutation of [m]; map[i] is the 0-indexed image of element i+1, minus 1.
struct Permutation {
  std::vector<int> map;

  int size() const { return static_cast<int>(map.size()); }
  int image(int e) const { return map[e - 1] + 1; }  // 1-indexed
  static Permutation identity(int m);
};

Permutation random_permutation(int m, Rng& rng);
SubsetMask apply_permutation(const Permutation& sigma, const SubsetMask& s);
std::vector<SubsetMask> apply_permutation(const Permutation& sigma, const std::vector<SubsetMask>& family);

// Index of a balanced codeword: a bit string over [3rk] whose r consecutive
// 3k-blocks each hold exactly k ones. ranks[i] is the colex rank of block i.
struct BalancedIndex {
  std::vector<std::uint64_t> ranks;
  int k = 0;
  int r = 0;

  // Mixed-radix flattening, first block most significant; this is the axis
  // index of the r-th Kronecker power directly.
  std::uint64_t flat_index() const;
};

// nullopt means "not balanced" — a filter outcome, not an error.
std::optional<BalancedIndex> balanced_encode(const SubsetMask& x, int k, int r);
SubsetMask balanced_decode(const BalancedIndex& b);

}  // namespace trank
