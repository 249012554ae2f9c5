#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "trank/gen.hpp"
#include "trank/setcover.hpp"

using namespace trank;

namespace {

SetCoverInstance make_instance(int n, int t, int s, std::vector<std::vector<int>> sets) {
  std::vector<SubsetMask> masks;
  for (const auto& e : sets) masks.push_back(SubsetMask::of_elements(e, n));
  return SetCoverInstance::make(n, t, s, std::move(masks));
}

}  // namespace

TEST_CASE("brute-force set cover") {
  CHECK(setcover_brute(make_instance(3, 3, 1, {{1}, {2}, {3}})));
  CHECK_FALSE(setcover_brute(make_instance(3, 2, 1, {{1}, {2}, {3}})));
  CHECK(setcover_brute(make_instance(4, 2, 2, {{1, 2}, {3, 4}, {1, 3}})));
  CHECK(setcover_brute(make_instance(0, 0, 1, {})));
  CHECK_FALSE(setcover_brute(make_instance(2, 5, 1, {{1}})));
}

TEST_CASE("downward closure") {
  const auto closure = downward_closure({SubsetMask::of_elements({1, 2}, 3)});
  const std::set<std::uint64_t> bits = [&] {
    std::set<std::uint64_t> out;
    for (const auto& s : closure) out.insert(s.bits);
    return out;
  }();
  CHECK(bits == std::set<std::uint64_t>{0b000, 0b001, 0b010, 0b011});

  // idempotence
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    SetCoverGenOptions opts;
    opts.n = 8;
    opts.s = 3;
    opts.count = 5;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto inst = gen_setcover(opts, local);
    const auto once = downward_closure(inst.sets);
    CHECK(downward_closure(once) == once);
  }
}

TEST_CASE("covering with t sets is partitioning the closure with t sets") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    SetCoverGenOptions opts;
    opts.n = 4 + static_cast<int>(rng.below(5));
    opts.s = 1 + static_cast<int>(rng.below(3));
    opts.t = 1 + static_cast<int>(rng.below(5));
    opts.count = rng.below(7);
    opts.plant = false;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto inst = gen_setcover(opts, local);
    const bool covers = setcover_brute(inst);
    const bool partitions = oracle::partition_exists(downward_closure(inst.sets), inst.n, inst.t);
    CHECK(covers == partitions);
  }
}

TEST_CASE("disjoint union DP against tuple enumeration") {
  const std::vector<SubsetMask> closed{SubsetMask::empty(2), SubsetMask::of_elements({1}, 2),
                                       SubsetMask::of_elements({2}, 2)};
  const auto levels = disjoint_union_dp(closed, 2, 2, 0);
  REQUIRE(levels.size() == 2);
  bool found = false;
  for (const auto& x : levels[1]) found = found || x == SubsetMask::full(2);
  CHECK(found);

  // oracle: unions of exactly m pairwise disjoint members (empty sets may repeat)
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    SetCoverGenOptions opts;
    opts.n = 7;
    opts.s = 3;
    opts.count = 4;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto family = downward_closure(gen_setcover(opts, local).sets);
    const int cap = 5, low = 1, t = 3;
    const auto dp = disjoint_union_dp(family, t, cap, low);

    std::vector<std::set<std::uint64_t>> expected(static_cast<std::size_t>(t));
    // level 1
    for (const auto& x : family)
      if (x.count() <= cap) expected[0].insert(x.bits);
    // level m: grow every level-(m-1) union by one disjoint member
    for (int m = 1; m < t; ++m)
      for (std::uint64_t a : expected[static_cast<std::size_t>(m - 1)])
        for (const auto& b : family)
          if ((a & b.bits) == 0 && __builtin_popcountll(a | b.bits) <= cap)
            expected[static_cast<std::size_t>(m)].insert(a | b.bits);

    for (int m = 0; m < t; ++m) {
      std::set<std::uint64_t> filtered;
      for (std::uint64_t bits : expected[static_cast<std::size_t>(m)])
        if (__builtin_popcountll(bits) >= low) filtered.insert(bits);
      std::set<std::uint64_t> got;
      for (const auto& x : dp[static_cast<std::size_t>(m)]) got.insert(x.bits);
      CHECK(got == filtered);
    }
  }
}

TEST_CASE("reduction examples") {
  const auto wht = [](const TripartitionInstance& inst) { return tripartition_wht(inst); };

  CHECK(reduce_and_solve(make_instance(3, 3, 1, {{1}, {2}, {3}}), wht).answer);
  CHECK(reduce_and_solve(make_instance(6, 3, 2, {{1, 2}, {3, 4}, {5, 6}, {1, 3}}), wht).answer);
  CHECK_FALSE(reduce_and_solve(make_instance(6, 2, 2, {{1, 2}, {3, 4}, {5, 6}, {1, 3}}), wht).answer);
}

TEST_CASE("reduction agrees with brute force on a random corpus") {
  const auto wht = [](const TripartitionInstance& inst) { return tripartition_wht(inst); };
  const auto brute = [](const TripartitionInstance& inst) {
    return tripartition_brute(inst).has_value();
  };

  Rng rng(1618);
  int fallback_free = 0;
  for (int i = 0; i < 120; ++i) {
    SetCoverGenOptions opts;
    opts.n = 4 + static_cast<int>(rng.below(9));  // up to 12
    opts.s = 1 + static_cast<int>(rng.below(3));
    opts.t = 1 + static_cast<int>(rng.below(5));
    opts.count = rng.below(9);
    opts.plant = rng.below(2) == 0 && opts.t >= (opts.n + opts.s - 1) / opts.s;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto inst = gen_setcover(opts, local);

    const bool expected = setcover_brute(inst);
    const auto via_wht = reduce_and_solve(inst, wht);
    const auto via_brute = reduce_and_solve(inst, brute);
    CHECK(via_wht.answer == expected);
    CHECK(via_brute.answer == expected);
    CHECK(via_wht.used_fallback == via_brute.used_fallback);
    if (!via_wht.used_fallback) ++fallback_free;
  }
  CHECK(fallback_free >= 30);  // the reduction path itself is exercised
}

TEST_CASE("monotonicity: adding a set never flips yes to no") {
  const auto wht = [](const TripartitionInstance& inst) { return tripartition_wht(inst); };
  Rng rng(24601);
  for (int i = 0; i < 50; ++i) {
    SetCoverGenOptions opts;
    opts.n = 6 + static_cast<int>(rng.below(4));
    opts.s = 2;
    opts.t = 3;
    opts.count = 5;
    Rng local = rng.split(static_cast<std::uint64_t>(i));
    const auto inst = gen_setcover(opts, local);

    auto bigger_sets = inst.sets;
    std::vector<int> extra;
    extra.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.n))));
    bigger_sets.push_back(SubsetMask::of_elements(extra, inst.n));
    const auto bigger = SetCoverInstance::make(inst.n, inst.t, inst.s, std::move(bigger_sets));

    if (reduce_and_solve(inst, wht).answer) CHECK(reduce_and_solve(bigger, wht).answer);
  }
}

TEST_CASE("degenerate shapes") {
  const auto wht = [](const TripartitionInstance& inst) { return tripartition_wht(inst); };
  // 3s >= n: falls back to brute force, flagged
  const auto res = reduce_and_solve(make_instance(3, 3, 3, {{1, 2, 3}}), wht);
  CHECK(res.answer);
  CHECK(res.used_fallback);

  CHECK(reduce_and_solve(make_instance(0, 0, 1, {}), wht).answer);
  CHECK_FALSE(reduce_and_solve(make_instance(4, 0, 1, {{1}}), wht).answer);
}
