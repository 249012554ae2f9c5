#include "trank/partition_tensor.hpp"

#include <unordered_set>

namespace trank {

SparseTensor partition_tensor(int k) {
  if (k < 1) throw ParameterError("partition_tensor: k must be >= 1");
  if (k > 4) throw GuardError("partition_tensor: k > 4 exceeds the dense support guard");
  const int m = 3 * k;
  const auto subsets = enumerate_ksubsets(m, k);
  const std::uint64_t n = subsets.size();
  SparseTensor t;
  t.dims = {n, n, n};
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      if (!subsets[i].disjoint(subsets[j])) continue;
      const SubsetMask rest = subsets[i].unite(subsets[j]).complement();
      t.entries.emplace(Index3{i, j, rank_ksubset(rest, k)}, 1);
    }
  return t;
}

bool verify_tightness(int k) {
  if (k < 1 || k > 3) throw ParameterError("verify_tightness: supported for 1 <= k <= 3");
  const int m = 3 * k;
  const auto subsets = enumerate_ksubsets(m, k);
  std::vector<std::uint64_t> f(subsets.size());
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::uint64_t v = 0;
    for (int e : subsets[i].elements()) v += 1ull << (2 * e);  // 4^e
    f[i] = v;
    if (!seen.insert(v).second) return false;  // f must be injective
  }
  std::uint64_t target = 0;
  for (int e = 1; e <= m; ++e) target += 1ull << (2 * e);

  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = 0; b < subsets.size(); ++b)
      for (std::size_t c = 0; c < subsets.size(); ++c) {
        const bool disjoint =
            subsets[a].disjoint(subsets[b]) && subsets[a].unite(subsets[b]).disjoint(subsets[c]);
        const bool hits = f[a] + f[b] + f[c] == target;
        if (disjoint != hits) return false;
      }
  return true;
}

GroupLabel group_map_f(const SubsetMask& s, int k) {
  if (s.count() != k) throw ParameterError("group_map_f: subset has wrong cardinality");
  GroupLabel g;
  g.len = 3 * k - 1;
  g.bits = (s.bits >> 1);  // drop element 1; element e lands at bit e-2
  return g;
}

bool verify_group_map(int k) {
  if (k < 1 || k > 3) throw ParameterError("verify_group_map: supported for 1 <= k <= 3");
  const int m = 3 * k;
  const auto subsets = enumerate_ksubsets(m, k);
  const std::uint64_t ones = (1ull << (m - 1)) - 1;
  std::vector<std::uint64_t> f(subsets.size());
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    f[i] = group_map_f(subsets[i], k).bits;
    if (!seen.insert(f[i]).second) return false;
  }
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      const bool ab_disjoint = subsets[a].disjoint(subsets[b]);
      const SubsetMask uni = subsets[a].unite(subsets[b]);
      for (std::size_t c = 0; c < subsets.size(); ++c) {
        const bool disjoint = ab_disjoint && uni.disjoint(subsets[c]);
        const bool hits = (f[a] ^ f[b] ^ f[c]) == ones;
        if (disjoint != hits) return false;
      }
    }
  return true;
}

namespace {

// One term per character chi of Z_2^len: vector entries (-1)^<chi, label(S)>,
// scale (-1)^<chi, all-ones> / 2^len. Expands to the 0/1 tensor of the
// triples whose label sum is all-ones.
Decomposition character_decomposition(const FieldContext& ctx, const std::vector<std::uint64_t>& labels,
                                      int len) {
  const std::uint64_t n = labels.size();
  const std::uint64_t group_order = 1ull << len;
  const Fe inv_order = ctx.pow(ctx.inv2(), static_cast<std::uint64_t>(len));
  const Fe minus_one = ctx.neg(1);
  const std::uint64_t ones = group_order - 1;

  Decomposition d;
  d.p = ctx.modulus();
  d.dims = {n, n, n};
  d.terms.reserve(group_order);
  for (std::uint64_t chi = 0; chi < group_order; ++chi) {
    RankOneTerm term;
    term.u.resize(n);
    for (std::uint64_t i = 0; i < n; ++i)
      term.u[i] = (__builtin_popcountll(chi & labels[i]) & 1) ? minus_one : 1;
    term.v = term.u;
    term.w = term.u;
    const Fe sign = (__builtin_popcountll(chi & ones) & 1) ? minus_one : static_cast<Fe>(1);
    term.scale = ctx.mul(sign, inv_order);
    d.terms.push_back(std::move(term));
  }
  return d;
}

std::vector<std::uint64_t> drop_one_labels(int k) {
  const auto subsets = enumerate_ksubsets(3 * k, k);
  std::vector<std::uint64_t> labels(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) labels[i] = group_map_f(subsets[i], k).bits;
  return labels;
}

std::vector<std::uint64_t> indicator_labels(int k) {
  const auto subsets = enumerate_ksubsets(3 * k, k);
  std::vector<std::uint64_t> labels(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) labels[i] = subsets[i].bits;
  return labels;
}

}  // namespace

Decomposition group_decomposition(int k, const FieldContext& ctx, bool* used_fallback) {
  if (k < 1) throw ParameterError("group_decomposition: k must be >= 1");
  if (k > 4) throw GuardError("group_decomposition: k > 4 exceeds the construction guard");
  if (used_fallback) *used_fallback = false;
  if (k <= 3 && !verify_group_map(k)) {
    if (used_fallback) *used_fallback = true;
    return naive_group_decomposition(k, ctx);
  }
  return character_decomposition(ctx, drop_one_labels(k), 3 * k - 1);
}

Decomposition naive_group_decomposition(int k, const FieldContext& ctx) {
  if (k < 1) throw ParameterError("naive_group_decomposition: k must be >= 1");
  if (k > 4) throw GuardError("naive_group_decomposition: k > 4 exceeds the construction guard");
  return character_decomposition(ctx, indicator_labels(k), 3 * k);
}

CertificationResult certify_decomposition(const Decomposition& d, int k, Rng& rng) {
  const SparseTensor t = partition_tensor(k);
  if (t.dims != d.dims) throw ParameterError("certify_decomposition: dimension mismatch");
  CertificationResult res;
  if (k <= 3) {
    res.valid = verify_decomposition(d, t);
    res.exact = true;
    return res;
  }
  // k = 4: exhaustive expansion is ~2e11 operations; compare evaluations at
  // random points instead.
  const FieldContext ctx(d.p);
  const int trials = 1000;
  res.exact = false;
  res.trials = trials;
  const std::uint64_t n = d.dims[0];
  std::vector<Fe> x(n), y(n), z(n);
  for (int it = 0; it < trials; ++it) {
    for (std::uint64_t i = 0; i < n; ++i) {
      x[i] = ctx.sample(rng);
      y[i] = ctx.sample(rng);
      z[i] = ctx.sample(rng);
    }
    Fe direct = 0;
    for (const auto& term : d.terms) {
      unsigned __int128 du = 0, dv = 0, dw = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        du += static_cast<unsigned __int128>(term.u[i]) * x[i] % d.p;
        dv += static_cast<unsigned __int128>(term.v[i]) * y[i] % d.p;
        dw += static_cast<unsigned __int128>(term.w[i]) * z[i] % d.p;
      }
      const Fe pu = static_cast<Fe>(du % d.p), pv = static_cast<Fe>(dv % d.p),
               pw = static_cast<Fe>(dw % d.p);
      direct = ctx.add(direct, ctx.mul(ctx.mul(term.scale, pu), ctx.mul(pv, pw)));
    }
    if (direct != eval_naive(ctx, t, x, y, z)) {
      res.valid = false;
      return res;
    }
  }
  res.valid = true;
  return res;
}

RankBounds rank_bounds(int k, std::optional<WideInt> candidate_rank) {
  if (k < 1) throw ParameterError("rank_bounds: k must be >= 1");
  RankBounds b;
  b.k = k;
  WideInt pow8 = 1, pow27 = 1;
  for (int i = 0; i < k; ++i) {
    pow8 *= 8;
    pow27 *= 27;
  }
  b.lower_threshold = Rational(pow8 * binomial(3 * k, k) * binomial(2 * k, k), pow27);
  b.lower_threshold_weak = Rational(2 * pow8, WideInt(9) * k);
  b.upper_bound = Rational(pow8, 2);
  if (candidate_rank) {
    b.candidate_rank = candidate_rank;
    b.candidate_below_threshold = Rational(*candidate_rank) < b.lower_threshold;
  }
  return b;
}

}  // namespace trank
