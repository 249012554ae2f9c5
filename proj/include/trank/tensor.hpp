#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "trank/field.hpp"

namespace trank {

using Index3 = std::array<std::uint64_t, 3>;

// Trilinear form as a coefficient map; no zero coefficients are stored.
struct SparseTensor {
  std::array<std::uint64_t, 3> dims{0, 0, 0};
  std::map<Index3, Fe> entries;

  std::size_t support_size() const { return entries.size(); }
  Fe coeff(std::uint64_t i, std::uint64_t j, std::uint64_t k) const {
    auto it = entries.find(Index3{i, j, k});
    return it == entries.end() ? 0 : it->second;
  }
  void set(std::uint64_t i, std::uint64_t j, std::uint64_t k, Fe c) {
    if (c != 0) entries[Index3{i, j, k}] = c;
  }
  bool operator==(const SparseTensor& o) const { return dims == o.dims && entries == o.entries; }
};

// scale * (sum_i u_i X_i)(sum_j v_j Y_j)(sum_k w_k Z_k)
struct RankOneTerm {
  std::vector<Fe> u, v, w;
  Fe scale = 1;
};

struct Decomposition {
  std::uint64_t p = 0;
  std::array<std::uint64_t, 3> dims{0, 0, 0};
  std::vector<RankOneTerm> terms;

  std::size_t rank() const { return terms.size(); }
};

Fe eval_naive(const FieldContext& ctx, const SparseTensor& t, std::span<const Fe> x,
              std::span<const Fe> y, std::span<const Fe> z);

// Paired indices flatten as (i, i') -> i * dims'(axis) + i'; the left factor
// is the high digit everywhere in this codebase.
SparseTensor kron_product(const FieldContext& ctx, const SparseTensor& a, const SparseTensor& b);
SparseTensor kron_power(const FieldContext& ctx, const SparseTensor& t, int r);

SparseTensor expand_decomposition(const Decomposition& d);
bool verify_decomposition(const Decomposition& d, const SparseTensor& t);

// T^{x r}(x, y, z) through a rank decomposition of the base tensor T:
// recurse over terms, contracting one axis level per step.
Fe eval_kron_via_decomposition(const Decomposition& d, int r, std::span<const Fe> x,
                               std::span<const Fe> y, std::span<const Fe> z);

// Rank over Z_p of the matrix unfolding along one leg (1, 2 or 3).
std::uint64_t flattening_rank(const FieldContext& ctx, const SparseTensor& t, int leg);

}  // namespace trank
