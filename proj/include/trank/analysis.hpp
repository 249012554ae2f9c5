#pragma once

#include <string>
#include <vector>

#include "trank/partition_tensor.hpp"
#include "trank/wideint.hpp"

namespace trank {

// Per-block cost base of the randomized tripartition decider when the base
// tensor of order k is assumed to reach the minimal asymptotic rank C(3k,k),
// next to the unconditional column backed by the proven 2^{3k-1} bound.
struct RuntimeBaseRow {
  int k = 0;
  Rational base_per_block;           // 27^k / C(2k,k)
  double base_per_block_f = 0.0;
  double base_per_element = 0.0;     // base_per_block^(1/(3k))
  Rational uncond_base_per_block;    // 2^{3k-1} 27^k / (C(3k,k) C(2k,k))
  double uncond_base_per_element = 0.0;
  bool beats_wht = false;            // base_per_block^(1/k) < 8
};

std::vector<RuntimeBaseRow> runtime_base_table(int k_max);  // k_max <= 200

std::vector<RankBounds> threshold_table(int k_max);

std::string format_runtime_table(const std::vector<RuntimeBaseRow>& rows);
std::string format_threshold_table(const std::vector<RankBounds>& rows);

}  // namespace trank
