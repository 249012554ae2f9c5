#include "trank/subsets.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace trank {

SubsetMask::SubsetMask(std::uint64_t bits_, int m_) : bits(bits_), m(m_) {
  if (m_ < 0 || m_ > 63) throw ParameterError("ground set size must be in [0, 63]");
  if (m_ < 63 && (bits_ >> m_) != 0) throw ParameterError("subset has bits beyond the ground set");
}

SubsetMask SubsetMask::full(int m) {
  if (m < 0 || m > 63) throw ParameterError("ground set size must be in [0, 63]");
  return SubsetMask(m == 0 ? 0 : (~0ull >> (64 - m)), m);
}

SubsetMask SubsetMask::of_elements(const std::vector<int>& elems, int m) {
  std::uint64_t bits = 0;
  for (int e : elems) {
    if (e < 1 || e > m) throw ParameterError("element out of range");
    bits |= 1ull << (e - 1);
  }
  return SubsetMask(bits, m);
}

std::vector<int> SubsetMask::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(__builtin_ctzll(b) + 1);
  return out;
}

WideInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  WideInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: every prefix is a binomial coefficient
  }
  return result;
}

std::uint64_t binomial64(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 64>, 64> t{};
    for (int i = 0; i < 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || k > n) return 0;
  if (n < 0 || n > 63) throw ParameterError("binomial64 supports n <= 63");
  return table[n][k];
}

std::uint64_t rank_ksubset(const SubsetMask& s, int k) {
  if (s.count() != k) throw ParameterError("rank_ksubset: subset has wrong cardinality");
  std::uint64_t rank = 0;
  int i = 1;
  for (std::uint64_t b = s.bits; b != 0; b &= b - 1, ++i) {
    const int elem = __builtin_ctzll(b) + 1;
    rank += binomial64(elem - 1, i);
  }
  return rank;
}

SubsetMask unrank_ksubset(std::uint64_t index, int m, int k) {
  if (k < 0 || k > m) throw ParameterError("unrank_ksubset: k out of range");
  if (index >= binomial64(m, k)) throw ParameterError("unrank_ksubset: index out of range");
  std::uint64_t bits = 0;
  for (int j = k; j >= 1; --j) {
    int c = j - 1;  // largest c with C(c, j) <= index
    while (binomial64(c + 1, j) <= index) ++c;
    index -= binomial64(c, j);
    bits |= 1ull << c;  // element c+1
  }
  return SubsetMask(bits, m);
}

std::vector<SubsetMask> enumerate_ksubsets(int m, int k) {
  if (k < 0 || k > m) throw ParameterError("enumerate_ksubsets: k out of range");
  const std::uint64_t total = binomial64(m, k);
  if (total > 10'000'000ull) throw GuardError("enumerate_ksubsets: family too large");
  std::vector<SubsetMask> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(unrank_ksubset(i, m, k));
  return out;
}

Permutation Permutation::identity(int m) {
  Permutation p;
  p.map.resize(m);
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

Permutation random_permutation(int m, Rng& rng) {
  Permutation p = Permutation::identity(m);
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p.map[i], p.map[j]);
  }
  return p;
}

SubsetMask apply_permutation(const Permutation& sigma, const SubsetMask& s) {
  std::uint64_t bits = 0;
  for (std::uint64_t b = s.bits; b != 0; b &= b - 1) bits |= 1ull << sigma.map[__builtin_ctzll(b)];
  return SubsetMask(bits, s.m);
}

std::vector<SubsetMask> apply_permutation(const Permutation& sigma, const std::vector<SubsetMask>& family) {
  std::vector<SubsetMask> out;
  out.reserve(family.size());
  for (const auto& s : family) out.push_back(apply_permutation(sigma, s));
  return out;
}

std::uint64_t BalancedIndex::flat_index() const {
  const std::uint64_t radix = binomial64(3 * k, k);
  std::uint64_t idx = 0;
  for (int i = 0; i < r; ++i) idx = idx * radix + ranks[static_cast<std::size_t>(i)];
  return idx;
}

std::optional<BalancedIndex> balanced_encode(const SubsetMask& x, int k, int r) {
  if (k < 1 || r < 1 || x.m != 3 * k * r) throw ParameterError("balanced_encode: dimensions do not match");
  const std::uint64_t block_mask = (1ull << (3 * k)) - 1;
  BalancedIndex b;
  b.k = k;
  b.r = r;
  b.ranks.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    const std::uint64_t block = (x.bits >> (3 * k * i)) & block_mask;
    if (__builtin_popcountll(block) != k) return std::nullopt;
    b.ranks.push_back(rank_ksubset(SubsetMask(block, 3 * k), k));
  }
  return b;
}

SubsetMask balanced_decode(const BalancedIndex& b) {
  if (b.r < 1 || static_cast<int>(b.ranks.size()) != b.r) throw ParameterError("balanced_decode: malformed index");
  std::uint64_t bits = 0;
  for (int i = 0; i < b.r; ++i) {
    const SubsetMask block = unrank_ksubset(b.ranks[static_cast<std::size_t>(i)], 3 * b.k, b.k);
    bits |= block.bits << (3 * b.k * i);
  }
  return SubsetMask(bits, 3 * b.k * b.r);
}

}  // namespace trank
