#include "trank/gen.hpp"

#include <algorithm>

namespace trank {

namespace {

SubsetMask random_ksubset(int m, int k, Rng& rng) {
  // Partial Fisher-Yates: the first k slots of a shuffle.
  std::vector<int> pool(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::uint64_t bits = 0;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    bits |= 1ull << (pool[static_cast<std::size_t>(i)] - 1);
  }
  return SubsetMask(bits, m);
}

}  // namespace

TripartitionInstance gen_tripartition(const TripartitionGenOptions& opts, Rng& rng) {
  const int n = opts.n;
  if (n < 1 || 3 * n > 63) throw ParameterError("gen: need 1 <= n and 3n <= 63");
  std::array<std::vector<SubsetMask>, 3> families;

  if (opts.density) {
    if (*opts.density < 0.0 || *opts.density > 1.0) throw ParameterError("gen: density must be in [0, 1]");
    if (3 * n > 21) throw GuardError("gen: density mode enumerates all n-subsets; needs 3n <= 21");
    const auto all = enumerate_ksubsets(3 * n, n);
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(*opts.density * 18446744073709551615.0);
    for (auto& family : families)
      for (const auto& s : all)
        if (rng.next() <= threshold && *opts.density > 0.0) family.push_back(s);
  } else if (opts.family_size) {
    for (auto& family : families)
      for (std::size_t i = 0; i < *opts.family_size; ++i) family.push_back(random_ksubset(3 * n, n, rng));
  }

  if (opts.plant) {
    const Permutation sigma = random_permutation(3 * n, rng);
    std::array<std::uint64_t, 3> bits{};
    for (int pos = 0; pos < 3 * n; ++pos) bits[pos / n] |= 1ull << sigma.map[static_cast<std::size_t>(pos)];
    for (int i = 0; i < 3; ++i) families[i].push_back(SubsetMask(bits[static_cast<std::size_t>(i)], 3 * n));
  }
  return TripartitionInstance::make(n, std::move(families));
}

SetCoverInstance gen_setcover(const SetCoverGenOptions& opts, Rng& rng) {
  if (opts.n < 1 || opts.n > 63) throw ParameterError("gen: universe size out of range");
  if (opts.s < 1) throw ParameterError("gen: max set size must be >= 1");
  std::vector<SubsetMask> sets;
  for (std::size_t i = 0; i < opts.count; ++i) {
    const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.s)));
    sets.push_back(random_ksubset(opts.n, std::min(size, opts.n), rng));
  }
  if (opts.plant) {
    const int blocks = (opts.n + opts.s - 1) / opts.s;
    if (blocks > opts.t)
      throw ParameterError("gen: planting needs t >= ceil(n/s)");
    const Permutation sigma = random_permutation(opts.n, rng);
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(blocks), 0);
    for (int pos = 0; pos < opts.n; ++pos)
      bits[static_cast<std::size_t>(pos / opts.s)] |= 1ull << sigma.map[static_cast<std::size_t>(pos)];
    for (auto b : bits) sets.push_back(SubsetMask(b, opts.n));
  }
  return SetCoverInstance::make(opts.n, opts.t, opts.s, std::move(sets));
}

}  // namespace trank
