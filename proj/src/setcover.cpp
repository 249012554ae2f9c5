#include "trank/setcover.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace trank {

SetCoverInstance SetCoverInstance::make(int n, int t, int s, std::vector<SubsetMask> sets) {
  if (n < 0 || n > 63) throw ParameterError("set cover: universe size must be in [0, 63]");
  if (t < 0) throw ParameterError("set cover: budget must be >= 0");
  if (s < 0) throw ParameterError("set cover: max set size must be >= 0");
  for (const auto& x : sets) {
    if (x.m != n) throw ParameterError("set cover: set over wrong ground set");
    if (x.count() > s) throw ParameterError("set cover: set larger than s");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  SetCoverInstance inst;
  inst.n = n;
  inst.t = t;
  inst.s = s;
  inst.sets = std::move(sets);
  return inst;
}

bool setcover_brute(const SetCoverInstance& inst) {
  if (inst.n == 0) return true;
  if (inst.n > 15) throw GuardError("setcover_brute: n > 15 exceeds the 2^n DP guard");
  const std::uint64_t full = SubsetMask::full(inst.n).bits;
  constexpr int kInf = 1 << 20;
  std::vector<int> dp(full + 1, kInf);
  dp[0] = 0;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    if (dp[mask] >= kInf) continue;
    for (const auto& x : inst.sets) {
      const std::uint64_t nm = mask | x.bits;
      if (dp[nm] > dp[mask] + 1) dp[nm] = dp[mask] + 1;
    }
  }
  return dp[full] <= inst.t;
}

std::vector<SubsetMask> downward_closure(const std::vector<SubsetMask>& family) {
  std::unordered_set<std::uint64_t> seen;
  int m = 0;
  for (const auto& x : family) {
    if (x.count() > 20) throw GuardError("downward_closure: member larger than 20 elements");
    m = x.m;
    std::uint64_t sub = x.bits;
    for (;;) {
      seen.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & x.bits;
    }
  }
  std::vector<SubsetMask> out;
  out.reserve(seen.size());
  for (std::uint64_t bits : seen) out.push_back(SubsetMask(bits, m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<SubsetMask>> disjoint_union_dp(const std::vector<SubsetMask>& closed,
                                                       int t, int cap, int low) {
  if (t < 0) throw ParameterError("disjoint_union_dp: t must be >= 0");
  const int m = closed.empty() ? 0 : closed.front().m;
  std::vector<std::vector<SubsetMask>> raw;
  raw.reserve(static_cast<std::size_t>(t));
  for (int level = 0; level < t; ++level) {
    std::unordered_set<std::uint64_t> next;
    if (level == 0) {
      for (const auto& x : closed)
        if (x.count() <= cap) next.insert(x.bits);
    } else {
      for (const auto& a : raw[static_cast<std::size_t>(level - 1)])
        for (const auto& b : closed) {
          if (!a.disjoint(b)) continue;
          const SubsetMask u = a.unite(b);
          if (u.count() <= cap) next.insert(u.bits);
        }
    }
    std::vector<SubsetMask> lvl;
    lvl.reserve(next.size());
    for (std::uint64_t bits : next) lvl.push_back(SubsetMask(bits, m));
    std::sort(lvl.begin(), lvl.end());
    raw.push_back(std::move(lvl));
  }
  // Size filter is applied to the output only; the DP itself must keep small
  // partial unions so later levels can grow them.
  std::vector<std::vector<SubsetMask>> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (const auto& x : raw[i])
      if (x.count() >= low) out[i].push_back(x);
  return out;
}

namespace {

struct PaddedInstance {
  int n;
  int t;
  std::vector<SubsetMask> sets;
};

PaddedInstance pad_to_multiple_of_three(const SetCoverInstance& inst) {
  const int d = (3 - inst.n % 3) % 3;
  PaddedInstance out;
  out.n = inst.n + d;
  out.t = inst.t + d;
  out.sets.reserve(inst.sets.size() + static_cast<std::size_t>(d));
  for (const auto& x : inst.sets) out.sets.push_back(SubsetMask(x.bits, out.n));
  for (int j = 0; j < d; ++j) out.sets.push_back(SubsetMask::empty(out.n).with(inst.n + 1 + j));
  return out;
}

}  // namespace

ReduceResult reduce_and_solve(const SetCoverInstance& inst, const TriSolver& tri_solver) {
  ReduceResult res;
  if (inst.n == 0) {
    res.answer = true;
    return res;
  }
  if (inst.s == 0) {
    res.answer = false;
    return res;
  }

  const PaddedInstance padded = pad_to_multiple_of_three(inst);
  const int n = padded.n;
  const int t = padded.t;
  const int s = inst.s;

  if (3 * s >= n) {
    // The separator would swallow the whole universe; nothing to hand to the
    // tripartition solver.
    res.used_fallback = true;
    res.answer = setcover_brute(SetCoverInstance::make(inst.n, inst.t, inst.s, inst.sets));
    return res;
  }

  const auto closed = downward_closure(padded.sets);
  const int cap = n / 3 + s;
  const int low = n / 3 - s;  // > 0 here
  const auto levels = disjoint_union_dp(closed, t, cap, low);
  for (const auto& lvl : levels) res.dp_level_sizes.push_back(lvl.size());

  const int block = low;  // reduced instances have block size n/3 - s
  const auto separators = enumerate_ksubsets(n, 3 * s);

  for (const auto& sep : separators) {
    // Order-preserving relabeling of [n] \ sep onto [n - 3s].
    std::array<int, 64> newpos{};
    int next = 0;
    for (int e = 1; e <= n; ++e)
      if (!sep.contains(e)) newpos[static_cast<std::size_t>(e)] = next++;
    const auto relabel = [&](std::uint64_t bits) {
      std::uint64_t out = 0;
      for (std::uint64_t b = bits; b != 0; b &= b - 1)
        out |= 1ull << newpos[static_cast<std::size_t>(__builtin_ctzll(b) + 1)];
      return out;
    };

    // Bucket each level by the trace on the separator; only members whose
    // part outside the separator has exactly block elements qualify.
    std::vector<std::unordered_map<std::uint64_t, std::vector<SubsetMask>>> buckets(levels.size());
    for (std::size_t lvl = 0; lvl < levels.size(); ++lvl)
      for (const auto& x : levels[lvl]) {
        const SubsetMask outside = x.minus(sep);
        if (outside.count() != block) continue;
        buckets[lvl][x.intersect(sep).bits].push_back(SubsetMask(relabel(outside.bits), n - 3 * s));
      }

    for (int t1 = 1; t1 <= t; ++t1)
      for (int t2 = 1; t1 + t2 <= t; ++t2)
        for (int t3 = 1; t1 + t2 + t3 <= t; ++t3) {
          const auto& b1 = buckets[static_cast<std::size_t>(t1 - 1)];
          const auto& b2 = buckets[static_cast<std::size_t>(t2 - 1)];
          const auto& b3 = buckets[static_cast<std::size_t>(t3 - 1)];
          if (b1.empty() || b2.empty() || b3.empty()) continue;
          for (const auto& [s1, f1] : b1)
            for (const auto& [s2, f2] : b2) {
              if (s1 & s2) continue;
              const std::uint64_t s3 = sep.bits ^ s1 ^ s2;
              const auto it = b3.find(s3);
              if (it == b3.end()) continue;
              const auto instance =
                  TripartitionInstance::make(block, {f1, f2, it->second});
              ++res.solver_calls;
              if (tri_solver(instance)) {
                res.answer = true;
                return res;
              }
            }
        }
  }
  res.answer = false;
  return res;
}

}  // namespace trank
