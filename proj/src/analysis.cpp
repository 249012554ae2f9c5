#include "trank/analysis.hpp"

#include <cmath>
#include <cstdio>

namespace trank {

namespace {

// Natural log of a positive big integer; integers near k = 200 overflow a
// direct double conversion, so shift down to ~900 bits first.
double log_wideint(const WideInt& x) {
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 900) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 900;
  return std::log(WideInt(x >> shift).convert_to<double>()) + shift * std::log(2.0);
}

double rational_to_double(const Rational& q) {
  return std::exp(log_wideint(numerator(q)) - log_wideint(denominator(q)));
}

// x^(1/e) for a positive rational, through logarithms of the exact parts.
double root_of(const Rational& q, int e) {
  return std::exp((log_wideint(numerator(q)) - log_wideint(denominator(q))) / e);
}

}  // namespace

std::vector<RuntimeBaseRow> runtime_base_table(int k_max) {
  if (k_max < 1) throw ParameterError("runtime_base_table: k_max must be >= 1");
  if (k_max > 200) throw GuardError("runtime_base_table: k_max > 200");
  std::vector<RuntimeBaseRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max));
  WideInt pow27 = 1, pow8 = 1, pow2 = 1;  // 27^k, 8^k, 2^{3k-1}
  for (int k = 1; k <= k_max; ++k) {
    pow27 *= 27;
    pow8 *= 8;
    pow2 = (k == 1) ? WideInt(4) : WideInt(pow2 * 8);
    const WideInt c3k = binomial(3 * k, k);
    const WideInt c2k = binomial(2 * k, k);
    RuntimeBaseRow row;
    row.k = k;
    row.base_per_block = Rational(pow27, c2k);  // C(3k,k) cancels against the assumed rank
    row.base_per_block_f = rational_to_double(row.base_per_block);
    row.base_per_element = root_of(row.base_per_block, 3 * k);
    row.uncond_base_per_block = Rational(pow2 * pow27, c3k * c2k);
    row.uncond_base_per_element = root_of(row.uncond_base_per_block, 3 * k);
    row.beats_wht = pow27 < pow8 * c2k;  // base_per_block^(1/k) < 8, exactly
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RankBounds> threshold_table(int k_max) {
  if (k_max < 1) throw ParameterError("threshold_table: k_max must be >= 1");
  if (k_max > 200) throw GuardError("threshold_table: k_max > 200");
  std::vector<RankBounds> rows;
  rows.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) rows.push_back(rank_bounds(k));
  return rows;
}

std::string format_runtime_table(const std::vector<RuntimeBaseRow>& rows) {
  std::string out =
      "   k   base/block      base/elem   uncond/elem  beats-8^n\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%4d %12.6g %14.10f %13.10f %10s\n", row.k,
                  row.base_per_block_f, row.base_per_element, row.uncond_base_per_element,
                  row.beats_wht ? "yes" : "no");
    out += buf;
  }
  return out;
}

std::string format_threshold_table(const std::vector<RankBounds>& rows) {
  std::string out = "k  lower-threshold  weak-lower  upper-bound\n";
  const auto fmt = [](const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
  };
  for (const auto& row : rows)
    out += std::to_string(row.k) + "  " + fmt(row.lower_threshold) + "  " +
           fmt(row.lower_threshold_weak) + "  " + fmt(row.upper_bound) + "\n";
  return out;
}

}  // namespace trank
