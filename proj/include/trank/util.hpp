#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace trank {

// Bad input: rejected parameters, malformed files. CLI exit code 2.
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A desk-scale resource guard tripped (table too large, k too big). CLI exit code 3.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64 finalizer; used for seed derivation only.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic random source. Raw engine output only — bounded draws use
// rejection sampling so results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Independent stream derived from this source's seed.
  Rng split(std::uint64_t stream) const { return Rng(mix64(seed_ ^ mix64(stream + 1))); }

  static std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace trank
