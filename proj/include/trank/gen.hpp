#pragma once

#include <optional>

#include "trank/setcover.hpp"
#include "trank/tripartition.hpp"

namespace trank {

struct TripartitionGenOptions {
  int n = 2;
  // Either an inclusion probability over all n-subsets (needs 3n <= 21) or an
  // explicit per-family size sampled without enumeration.
  std::optional<double> density;
  std::optional<std::size_t> family_size;
  bool plant = false;  // insert a random partition triple: yes by construction
};

TripartitionInstance gen_tripartition(const TripartitionGenOptions& opts, Rng& rng);

struct SetCoverGenOptions {
  int n = 6;
  int s = 2;
  int t = 3;
  std::size_t count = 8;  // random sets to draw
  bool plant = false;     // insert a partition of [n] into blocks of size <= s
};

SetCoverInstance gen_setcover(const SetCoverGenOptions& opts, Rng& rng);

}  // namespace trank
