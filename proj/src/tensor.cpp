#include "trank/tensor.hpp"

#include <algorithm>
#include <cassert>

namespace trank {

namespace {

constexpr std::uint64_t kMaxDenseCells = 10'000'000;
constexpr std::uint64_t kMaxStoredEntries = 10'000'000;

void check_lengths(const std::array<std::uint64_t, 3>& dims, std::span<const Fe> x,
                   std::span<const Fe> y, std::span<const Fe> z) {
  if (x.size() != dims[0] || y.size() != dims[1] || z.size() != dims[2])
    throw ParameterError("evaluation vectors do not match tensor dimensions");
}

std::uint64_t dense_cells(const std::array<std::uint64_t, 3>& dims) {
  unsigned __int128 n = 1;
  for (auto d : dims) n *= d;
  if (n > kMaxDenseCells) throw GuardError("tensor too large to expand densely");
  return static_cast<std::uint64_t>(n);
}

}  // namespace

Fe eval_naive(const FieldContext& ctx, const SparseTensor& t, std::span<const Fe> x,
              std::span<const Fe> y, std::span<const Fe> z) {
  check_lengths(t.dims, x, y, z);
  Fe acc = 0;
  for (const auto& [idx, c] : t.entries) {
    const Fe term = ctx.mul(ctx.mul(x[idx[0]], y[idx[1]]), ctx.mul(z[idx[2]], c));
    acc = ctx.add(acc, term);
  }
  return acc;
}

SparseTensor kron_product(const FieldContext& ctx, const SparseTensor& a, const SparseTensor& b) {
  if (a.entries.size() * b.entries.size() > kMaxStoredEntries)
    throw GuardError("kron_product: support too large");
  SparseTensor out;
  for (int axis = 0; axis < 3; ++axis) {
    const unsigned __int128 d =
        static_cast<unsigned __int128>(a.dims[axis]) * b.dims[axis];
    if (d > kMaxDenseCells * kMaxDenseCells) throw GuardError("kron_product: dimensions too large");
    out.dims[axis] = static_cast<std::uint64_t>(d);
  }
  for (const auto& [ia, ca] : a.entries)
    for (const auto& [ib, cb] : b.entries) {
      const Index3 idx{ia[0] * b.dims[0] + ib[0], ia[1] * b.dims[1] + ib[1],
                       ia[2] * b.dims[2] + ib[2]};
      out.entries.emplace(idx, ctx.mul(ca, cb));  // p prime: product of nonzeros is nonzero
    }
  return out;
}

SparseTensor kron_power(const FieldContext& ctx, const SparseTensor& t, int r) {
  if (r < 1) throw ParameterError("kron_power: r must be >= 1");
  SparseTensor acc = t;
  for (int i = 1; i < r; ++i) acc = kron_product(ctx, t, acc);
  return acc;
}

SparseTensor expand_decomposition(const Decomposition& d) {
  const FieldContext ctx(d.p);
  const std::uint64_t cells = dense_cells(d.dims);
  std::vector<Fe> dense(cells, 0);
  const std::uint64_t n2 = d.dims[1], n3 = d.dims[2];
  for (const auto& term : d.terms) {
    if (term.u.size() != d.dims[0] || term.v.size() != d.dims[1] || term.w.size() != d.dims[2])
      throw ParameterError("decomposition term has inconsistent dimensions");
    for (std::uint64_t i = 0; i < d.dims[0]; ++i) {
      const Fe su = ctx.mul(term.scale, term.u[i]);
      if (su == 0) continue;
      for (std::uint64_t j = 0; j < n2; ++j) {
        const Fe suv = ctx.mul(su, term.v[j]);
        if (suv == 0) continue;
        Fe* row = dense.data() + (i * n2 + j) * n3;
        for (std::uint64_t k = 0; k < n3; ++k) row[k] = ctx.add(row[k], ctx.mul(suv, term.w[k]));
      }
    }
  }
  SparseTensor out;
  out.dims = d.dims;
  for (std::uint64_t i = 0; i < d.dims[0]; ++i)
    for (std::uint64_t j = 0; j < n2; ++j)
      for (std::uint64_t k = 0; k < n3; ++k) {
        const Fe c = dense[(i * n2 + j) * n3 + k];
        if (c != 0) out.entries.emplace(Index3{i, j, k}, c);
      }
  return out;
}

bool verify_decomposition(const Decomposition& d, const SparseTensor& t) {
  if (d.dims != t.dims) throw ParameterError("verify_decomposition: dimension mismatch");
  return expand_decomposition(d) == t;
}

namespace {

// result[j] = sum_i coeffs[i] * x[i * stride + j]
std::vector<Fe> contract_axis(const FieldContext& ctx, std::span<const Fe> coeffs,
                              std::span<const Fe> x, std::uint64_t stride) {
  std::vector<Fe> out(stride, 0);
  for (std::uint64_t i = 0; i < coeffs.size(); ++i) {
    const Fe c = coeffs[i];
    if (c == 0) continue;
    const Fe* src = x.data() + i * stride;
    for (std::uint64_t j = 0; j < stride; ++j) out[j] = ctx.add(out[j], ctx.mul(c, src[j]));
  }
  return out;
}

Fe eval_kron_rec(const FieldContext& ctx, const Decomposition& d, int r, std::span<const Fe> x,
                 std::span<const Fe> y, std::span<const Fe> z) {
  if (r == 0) return ctx.mul(ctx.mul(x[0], y[0]), z[0]);
  const std::uint64_t sx = x.size() / d.dims[0];
  const std::uint64_t sy = y.size() / d.dims[1];
  const std::uint64_t sz = z.size() / d.dims[2];
  Fe acc = 0;
  for (const auto& term : d.terms) {
    const auto cx = contract_axis(ctx, term.u, x, sx);
    const auto cy = contract_axis(ctx, term.v, y, sy);
    const auto cz = contract_axis(ctx, term.w, z, sz);
    const Fe sub = eval_kron_rec(ctx, d, r - 1, cx, cy, cz);
    acc = ctx.add(acc, ctx.mul(term.scale, sub));
  }
  return acc;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < e; ++i) {
    acc *= b;
    if (acc > kMaxDenseCells) throw GuardError("kron power dimension too large");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

Fe eval_kron_via_decomposition(const Decomposition& d, int r, std::span<const Fe> x,
                               std::span<const Fe> y, std::span<const Fe> z) {
  if (r < 0) throw ParameterError("eval_kron_via_decomposition: r must be >= 0");
  const FieldContext ctx(d.p);
  const std::array<std::uint64_t, 3> power_dims{ipow(d.dims[0], r), ipow(d.dims[1], r),
                                                ipow(d.dims[2], r)};
  check_lengths(power_dims, x, y, z);
  return eval_kron_rec(ctx, d, r, x, y, z);
}

std::uint64_t flattening_rank(const FieldContext& ctx, const SparseTensor& t, int leg) {
  if (leg < 1 || leg > 3) throw ParameterError("flattening_rank: leg must be 1, 2 or 3");
  dense_cells(t.dims);
  const int a = leg - 1, b = (leg % 3), c = (leg + 1) % 3;
  const std::uint64_t rows = t.dims[a];
  const std::uint64_t cols = t.dims[b] * t.dims[c];
  std::vector<std::vector<Fe>> mat(rows, std::vector<Fe>(cols, 0));
  for (const auto& [idx, coeff] : t.entries) mat[idx[a]][idx[b] * t.dims[c] + idx[c]] = coeff;

  std::uint64_t rank = 0;
  std::uint64_t row = 0;
  for (std::uint64_t col = 0; col < cols && row < rows; ++col) {
    std::uint64_t pivot = row;
    while (pivot < rows && mat[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(mat[row], mat[pivot]);
    const Fe inv = ctx.inv(mat[row][col]);
    for (std::uint64_t i = row + 1; i < rows; ++i) {
      if (mat[i][col] == 0) continue;
      const Fe factor = ctx.mul(mat[i][col], inv);
      for (std::uint64_t j = col; j < cols; ++j)
        mat[i][j] = ctx.sub(mat[i][j], ctx.mul(factor, mat[row][j]));
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace trank
