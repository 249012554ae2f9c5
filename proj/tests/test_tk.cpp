#include <doctest.h>

#include <set>

#include "trank/partition_tensor.hpp"

using namespace trank;

TEST_CASE("partition tensor support") {
  const SparseTensor t1 = partition_tensor(1);
  CHECK(t1.dims == std::array<std::uint64_t, 3>{3, 3, 3});
  // exactly the permutation triples of ({1},{2},{3})
  const std::set<Index3> expected{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::set<Index3> actual;
  for (const auto& [idx, c] : t1.entries) {
    CHECK(c == 1);
    actual.insert(idx);
  }
  CHECK(actual == expected);

  for (int k = 1; k <= 4; ++k) {
    const WideInt expected_size = binomial(3 * k, k) * binomial(2 * k, k);
    CHECK(WideInt(partition_tensor(k).support_size()) == expected_size);
  }
  CHECK(partition_tensor(2).support_size() == 90);

  CHECK_THROWS_AS(partition_tensor(5), GuardError);
  CHECK_THROWS_AS(partition_tensor(0), ParameterError);
}

TEST_CASE("support is closed under simultaneous leg permutation") {
  for (int k = 1; k <= 3; ++k) {
    const SparseTensor t = partition_tensor(k);
    for (const auto& [idx, c] : t.entries) {
      CHECK(t.coeff(idx[0], idx[2], idx[1]) == 1);
      CHECK(t.coeff(idx[1], idx[0], idx[2]) == 1);
      CHECK(t.coeff(idx[1], idx[2], idx[0]) == 1);
      CHECK(t.coeff(idx[2], idx[0], idx[1]) == 1);
      CHECK(t.coeff(idx[2], idx[1], idx[0]) == 1);
    }
  }
}

TEST_CASE("tightness witness") {
  // k = 1 arithmetic: 4 + 16 + 64 hits the target, a repeated subset does not
  CHECK((1ull << 2) + (1ull << 4) + (1ull << 6) == 84);
  CHECK(3 * (1ull << 2) != 84);
  for (int k = 1; k <= 3; ++k) CHECK(verify_tightness(k));
}

TEST_CASE("group labels") {
  CHECK(group_map_f(SubsetMask::of_elements({1}, 3), 1) == GroupLabel{0, 2});
  CHECK(group_map_f(SubsetMask::of_elements({2}, 3), 1) == GroupLabel{1, 2});
  CHECK(group_map_f(SubsetMask::of_elements({3}, 3), 1) == GroupLabel{2, 2});
  // the disjoint triple sums to all-ones
  CHECK((group_map_f(SubsetMask::of_elements({1}, 3), 1).bits ^
         group_map_f(SubsetMask::of_elements({2}, 3), 1).bits ^
         group_map_f(SubsetMask::of_elements({3}, 3), 1).bits) == 3);
  CHECK_THROWS_AS(group_map_f(SubsetMask::of_elements({1, 2}, 3), 1), ParameterError);

  for (int k = 1; k <= 3; ++k) CHECK(verify_group_map(k));
}

TEST_CASE("group decompositions expand to the partition tensor") {
  FieldContext ctx(default_modulus());
  for (int k = 1; k <= 3; ++k) {
    bool fallback = true;
    const Decomposition d = group_decomposition(k, ctx, &fallback);
    CHECK_FALSE(fallback);
    CHECK(d.rank() == (1ull << (3 * k - 1)));
    CHECK(verify_decomposition(d, partition_tensor(k)));
  }
  for (int k = 1; k <= 2; ++k) {
    const Decomposition d = naive_group_decomposition(k, ctx);
    CHECK(d.rank() == (1ull << (3 * k)));
    CHECK(verify_decomposition(d, partition_tensor(k)));
  }
}

TEST_CASE("small-modulus decompositions also verify") {
  FieldContext ctx(5);
  CHECK(verify_decomposition(group_decomposition(1, ctx), partition_tensor(1)));
  CHECK(verify_decomposition(group_decomposition(2, ctx), partition_tensor(2)));
}

TEST_CASE("order-4 decomposition certifies at random points") {
  FieldContext ctx(default_modulus());
  Rng rng(2024);
  const Decomposition d = group_decomposition(4, ctx);
  CHECK(d.rank() == 2048);
  const auto res = certify_decomposition(d, 4, rng);
  CHECK(res.valid);
  CHECK_FALSE(res.exact);
  CHECK(res.trials == 1000);

  // exact path for small k
  const auto res1 = certify_decomposition(group_decomposition(1, ctx), 1, rng);
  CHECK(res1.valid);
  CHECK(res1.exact);
}

TEST_CASE("rank bound thresholds") {
  const RankBounds b1 = rank_bounds(1, WideInt(4));
  CHECK(b1.lower_threshold == Rational(16, 9));
  CHECK(b1.lower_threshold_weak == Rational(16, 9));
  CHECK(b1.upper_bound == Rational(4));
  CHECK_FALSE(b1.candidate_below_threshold);

  const RankBounds b2 = rank_bounds(2);
  CHECK(b2.lower_threshold == Rational(640, 81));
  CHECK(b2.upper_bound == Rational(32));

  // a hypothetical rank below the threshold is flagged
  CHECK(rank_bounds(2, WideInt(7)).candidate_below_threshold);
  CHECK_FALSE(rank_bounds(2, WideInt(8)).candidate_below_threshold);
}
