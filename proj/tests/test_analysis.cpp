#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "trank/analysis.hpp"

using namespace trank;

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

double rational_via_bigfloat(const Rational& q) {
  return static_cast<double>(BigFloat(numerator(q)) / BigFloat(denominator(q)));
}

double root_via_bigfloat(const Rational& q, int e) {
  const BigFloat value = BigFloat(numerator(q)) / BigFloat(denominator(q));
  return static_cast<double>(boost::multiprecision::pow(value, BigFloat(1) / e));
}

}  // namespace

TEST_CASE("runtime base rows: exact values at small k") {
  const auto rows = runtime_base_table(3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].base_per_block == Rational(27, 2));  // 13.5
  CHECK(rows[0].base_per_block_f == doctest::Approx(13.5));
  CHECK_FALSE(rows[0].beats_wht);
  CHECK(rows[0].uncond_base_per_block == Rational(4 * 27, 6));  // 18
}

TEST_CASE("the first conditional win over the 8^n transform is k = 11") {
  const auto rows = runtime_base_table(60);
  int first = 0;
  for (const auto& row : rows)
    if (row.beats_wht) {
      first = row.k;
      break;
    }
  CHECK(first == 11);
  for (const auto& row : rows) {
    if (row.k <= 10) CHECK_FALSE(row.beats_wht);
    if (row.k >= 11) CHECK(row.beats_wht);  // stays below 8 once crossed
  }

  // the flag decision is reproduced by the floating column
  for (const auto& row : rows)
    CHECK(row.beats_wht == (std::pow(row.base_per_element, 3.0) < 8.0));
}

TEST_CASE("per-element base approaches 3/2^(2/3)") {
  const auto rows = runtime_base_table(50);
  const double limit = 3.0 / std::pow(2.0, 2.0 / 3.0);
  CHECK(limit == doctest::Approx(1.8899).epsilon(1e-4));
  CHECK(std::abs(rows[49].base_per_element - limit) < 0.05);
  // monotone decrease toward the limit
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].base_per_element < rows[i - 1].base_per_element);
  // the unconditional column never beats the transform
  for (const auto& row : rows) CHECK(row.uncond_base_per_element >= std::pow(8.0, 1.0 / 3) - 1e-12);
}

TEST_CASE("threshold table delegates to rank_bounds and keeps the bound chain") {
  const auto rows = threshold_table(50);
  const RankBounds direct = rank_bounds(1);
  CHECK(rows[0].lower_threshold == direct.lower_threshold);
  CHECK(rows[0].lower_threshold_weak == direct.lower_threshold_weak);
  CHECK(rows[0].upper_bound == direct.upper_bound);

  WideInt pow8 = 1;
  for (const auto& row : rows) {
    pow8 *= 8;
    // weak lower bound really is a lower bound on the threshold
    CHECK(row.lower_threshold_weak <= row.lower_threshold);
    // threshold / 8^k falls with k
    if (row.k >= 2)
      CHECK(row.lower_threshold / Rational(pow8) <
            rows[static_cast<std::size_t>(row.k) - 2].lower_threshold / Rational(pow8 / 8));
  }
}

TEST_CASE("floating columns match 50-digit recomputation to 10 significant digits") {
  const auto rows = runtime_base_table(200);  // the full guarded range
  for (const auto& row : rows) {
    const double block_ref = rational_via_bigfloat(row.base_per_block);
    CHECK(std::abs(row.base_per_block_f - block_ref) <= 1e-10 * std::abs(block_ref));
    const double elem_ref = root_via_bigfloat(row.base_per_block, 3 * row.k);
    CHECK(std::abs(row.base_per_element - elem_ref) <= 1e-10 * std::abs(elem_ref));
    const double uncond_ref = root_via_bigfloat(row.uncond_base_per_block, 3 * row.k);
    CHECK(std::abs(row.uncond_base_per_element - uncond_ref) <= 1e-10 * std::abs(uncond_ref));
  }
}

TEST_CASE("tables render and guard") {
  const auto rows = runtime_base_table(12);
  const std::string text = format_runtime_table(rows);
  CHECK(text.find("yes") != std::string::npos);
  CHECK(format_threshold_table(threshold_table(2)).find("640/81") != std::string::npos);
  CHECK_THROWS_AS(runtime_base_table(201), GuardError);
  CHECK_THROWS_AS(runtime_base_table(0), ParameterError);
}
