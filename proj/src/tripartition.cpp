#include "trank/tripartition.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

#include "trank/field.hpp"

namespace trank {

TripartitionInstance TripartitionInstance::make(int n, std::array<std::vector<SubsetMask>, 3> families) {
  if (n < 1 || 3 * n > 63) throw ParameterError("tripartition: need 1 <= n and 3n <= 63");
  TripartitionInstance inst;
  inst.n = n;
  for (int i = 0; i < 3; ++i) {
    for (const auto& s : families[i]) {
      if (s.m != 3 * n) throw ParameterError("tripartition: family member over wrong ground set");
      if (s.count() != n) throw ParameterError("tripartition: family member has wrong cardinality");
    }
    std::sort(families[i].begin(), families[i].end());
    families[i].erase(std::unique(families[i].begin(), families[i].end()), families[i].end());
    inst.families[i] = std::move(families[i]);
  }
  return inst;
}

std::optional<TripartitionWitness> tripartition_brute(const TripartitionInstance& inst) {
  std::unordered_set<std::uint64_t> third;
  for (const auto& s : inst.families[2]) third.insert(s.bits);
  for (const auto& a : inst.families[0])
    for (const auto& b : inst.families[1]) {
      if (!a.disjoint(b)) continue;
      const SubsetMask rest = a.unite(b).complement();
      if (third.count(rest.bits)) return TripartitionWitness{a, b, rest};
    }
  return std::nullopt;
}

WideInt tripartition_count_brute(const TripartitionInstance& inst) {
  std::unordered_set<std::uint64_t> third;
  for (const auto& s : inst.families[2]) third.insert(s.bits);
  WideInt count = 0;
  for (const auto& a : inst.families[0])
    for (const auto& b : inst.families[1]) {
      if (!a.disjoint(b)) continue;
      if (third.count(a.unite(b).complement().bits)) ++count;
    }
  return count;
}

void wht_inplace(std::vector<std::int64_t>& table) {
  const std::size_t size = table.size();
  if (size == 0 || (size & (size - 1)) != 0) throw ParameterError("wht_inplace: size must be a power of two");
  std::int64_t* t = table.data();
  const int levels = __builtin_ctzll(size);
  std::size_t half = 1;
  // Fold three levels into each sweep; lead with a radix-2/4 pass so the
  // remaining level count is a multiple of three (it already is for the
  // 2^{3n} tripartition tables).
  if (levels % 3 == 1) {
    for (std::size_t i = 0; i < size; i += 2) {
      const std::int64_t a = t[i], b = t[i + 1];
      t[i] = a + b;
      t[i + 1] = a - b;
    }
    half = 2;
  } else if (levels % 3 == 2) {
    for (std::size_t i = 0; i < size; i += 4) {
      const std::int64_t s01 = t[i] + t[i + 1], d01 = t[i] - t[i + 1];
      const std::int64_t s23 = t[i + 2] + t[i + 3], d23 = t[i + 2] - t[i + 3];
      t[i] = s01 + s23;
      t[i + 1] = d01 + d23;
      t[i + 2] = s01 - s23;
      t[i + 3] = d01 - d23;
    }
    half = 4;
  }
  for (; half < size; half <<= 3)
    for (std::size_t block = 0; block < size; block += 8 * half)
      for (std::size_t i = block; i < block + half; ++i) {
        std::int64_t x[8];
        for (int j = 0; j < 8; ++j) x[j] = t[i + static_cast<std::size_t>(j) * half];
        const std::int64_t a0 = x[0] + x[1], a1 = x[0] - x[1], a2 = x[2] + x[3], a3 = x[2] - x[3];
        const std::int64_t a4 = x[4] + x[5], a5 = x[4] - x[5], a6 = x[6] + x[7], a7 = x[6] - x[7];
        const std::int64_t b0 = a0 + a2, b2 = a0 - a2, b1 = a1 + a3, b3 = a1 - a3;
        const std::int64_t b4 = a4 + a6, b6 = a4 - a6, b5 = a5 + a7, b7 = a5 - a7;
        t[i] = b0 + b4;
        t[i + half] = b1 + b5;
        t[i + 2 * half] = b2 + b6;
        t[i + 3 * half] = b3 + b7;
        t[i + 4 * half] = b0 - b4;
        t[i + 5 * half] = b1 - b5;
        t[i + 6 * half] = b2 - b6;
        t[i + 7 * half] = b3 - b7;
      }
}

WideInt tripartition_count_wht(const TripartitionInstance& inst) {
  if (inst.n > 8) throw GuardError("wht solver: n > 8 exceeds the 2^{3n} table guard");
  const int m = 3 * inst.n;
  const std::size_t size = 1ull << m;

  // Transformed entries are bounded by |F_i| <= C(3n,n) < 2^20 at n <= 8, so
  // a pairwise product fits in 64 bits and the triple product in 128.
  const auto build = [&](std::vector<std::int64_t>& table, int which) {
    table.assign(size, 0);
    for (const auto& s : inst.families[static_cast<std::size_t>(which)]) table[s.bits] = 1;
    wht_inplace(table);
  };
  // Workspace persists across calls; capacity only ever grows.
  thread_local std::vector<std::int64_t> acc, work;
  build(acc, 0);
  build(work, 1);
  for (std::size_t w = 0; w < size; ++w) acc[w] *= work[w];
  build(work, 2);

  __int128 total = 0;
  for (std::size_t w = 0; w < size; ++w) {
    const __int128 term = static_cast<__int128>(acc[w]) * work[w];
    total += (__builtin_popcountll(w) & 1) ? -term : term;
  }
  total /= static_cast<__int128>(size);  // exact: Fourier inversion of an integer count

  const bool neg = total < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-total) : static_cast<unsigned __int128>(total);
  WideInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return neg ? -out : out;
}

bool tripartition_wht(const TripartitionInstance& inst) { return tripartition_count_wht(inst) > 0; }

TripartitionInstance pad_instance(const TripartitionInstance& inst, int k) {
  if (k < 1) throw ParameterError("pad_instance: k must be >= 1");
  const int n0 = inst.n;
  const int n = k * ((n0 + k - 1) / k);
  if (n == n0) return inst;
  if (3 * n > 63) throw ParameterError("pad_instance: padded universe exceeds 63 elements");
  const int d = n - n0;
  // Fresh elements 3n0+1 .. 3n, dealt in three consecutive runs of length d.
  std::array<std::uint64_t, 3> extra{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < d; ++j) extra[i] |= 1ull << (3 * n0 + i * d + j);

  std::array<std::vector<SubsetMask>, 3> families;
  for (int i = 0; i < 3; ++i) {
    families[i].reserve(inst.families[i].size());
    for (const auto& s : inst.families[i]) families[i].push_back(SubsetMask(s.bits | extra[i], 3 * n));
  }
  return TripartitionInstance::make(n, std::move(families));
}

Rational success_probability(int n, int k) {
  if (k < 1 || n < k || n % k != 0) throw ParameterError("success_probability: k must divide n");
  const int r = n / k;
  WideInt num = 1;
  const WideInt per_block = binomial(3 * k, k) * binomial(2 * k, k);
  for (int i = 0; i < r; ++i) num *= per_block;
  return Rational(num, binomial(3 * n, n) * binomial(2 * n, n));
}

TrialPlan make_trial_plan(int n, int k, unsigned lambda) {
  TrialPlan plan;
  plan.k = k;
  plan.r = n / k;
  plan.p = success_probability(n, k);
  plan.lambda = lambda;
  const WideInt trials =
      (WideInt(lambda) * denominator(plan.p) + numerator(plan.p) - 1) / numerator(plan.p);
  if (trials > 100'000'000) throw GuardError("trial budget exceeds 1e8");
  plan.trials = trials.convert_to<std::uint64_t>();
  return plan;
}

namespace {

// Success bit of one independent trial, from its own deterministic stream.
bool run_trial(const TripartitionInstance& padded, const Decomposition& d, int k,
               const TensorSolveOptions& opts, const FieldContext& ctx, std::uint64_t veclen,
               std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  const int r = padded.n / k;
  const Permutation sigma = random_permutation(3 * padded.n, rng);

  std::array<std::vector<Fe>, 3> vecs;
  for (int i = 0; i < 3; ++i) {
    vecs[i].assign(veclen, 0);
    bool any = false;
    for (const auto& member : padded.families[i]) {
      const auto enc = balanced_encode(apply_permutation(sigma, member), k, r);
      if (!enc) continue;  // filtered out of the balanced code
      const Fe value = opts.small_sample ? rng.below(4) : ctx.sample(rng);
      vecs[i][enc->flat_index()] = value;
      any = any || value != 0;
    }
    if (!any) return false;
  }
  return eval_kron_via_decomposition(d, r, vecs[0], vecs[1], vecs[2]) != 0;
}

}  // namespace

TensorSolveResult tripartition_tensor(const TripartitionInstance& inst, const Decomposition& d,
                                      int k, const TensorSolveOptions& opts, Rng& rng) {
  const std::uint64_t n_axis = binomial64(3 * k, k);
  if (d.dims != std::array<std::uint64_t, 3>{n_axis, n_axis, n_axis})
    throw ParameterError("tripartition_tensor: decomposition does not match k");
  const TripartitionInstance padded = pad_instance(inst, k);
  const int r = padded.n / k;

  unsigned __int128 veclen = 1;
  for (int i = 0; i < r; ++i) {
    veclen *= n_axis;
    if (veclen > 10'000'000) throw GuardError("tripartition_tensor: power dimension too large");
  }

  TensorSolveResult res;
  res.plan = make_trial_plan(padded.n, k, opts.lambda);
  const FieldContext ctx(d.p);
  const std::uint64_t base_seed = rng.next();
  const auto trial_seed = [base_seed](std::uint64_t t) { return mix64(base_seed ^ mix64(t + 1)); };

  const std::uint64_t trials = res.plan.trials;
  const int threads = std::max(1, opts.threads);

  for (std::uint64_t chunk = 0; chunk < trials; chunk += static_cast<std::uint64_t>(threads)) {
    const std::uint64_t end = std::min(trials, chunk + static_cast<std::uint64_t>(threads));
    std::vector<char> success(end - chunk, 0);
    if (threads == 1) {
      success[0] = run_trial(padded, d, k, opts, ctx, static_cast<std::uint64_t>(veclen),
                             trial_seed(chunk));
    } else {
      std::vector<std::thread> pool;
      for (std::uint64_t t = chunk; t < end; ++t)
        pool.emplace_back([&, t] {
          success[t - chunk] = run_trial(padded, d, k, opts, ctx,
                                         static_cast<std::uint64_t>(veclen), trial_seed(t));
        });
      for (auto& th : pool) th.join();
    }
    for (std::uint64_t t = chunk; t < end; ++t)
      if (success[t - chunk]) {
        res.answer = true;
        res.trials_used = t + 1;
        return res;
      }
  }
  res.answer = false;
  res.trials_used = trials;
  return res;
}

}  // namespace trank
