#pragma once

#include <cstdint>

#include "trank/util.hpp"

namespace trank {

// Residue in [0, p). The modulus lives in FieldContext, not in the element.
using Fe = std::uint64_t;

bool is_prime(std::uint64_t n);

inline constexpr std::uint64_t kDefaultModulus = (1ull << 31) - 1;  // Mersenne prime 2^31-1

// Modulus from the TRANK_MODULUS environment variable, or kDefaultModulus.
std::uint64_t default_modulus();

// Arithmetic over Z_p, p an odd prime >= 5. Immutable; safe to share across threads.
class FieldContext {
 public:
  explicit FieldContext(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Fe add(Fe a, Fe b) const {
    Fe s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + p_ - b; }
  Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }
  Fe mul(Fe a, Fe b) const {
    return static_cast<Fe>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Fe pow(Fe base, std::uint64_t e) const;
  Fe inv(Fe a) const;           // throws ParameterError on a == 0
  Fe inv2() const { return inv2_; }

  // Reduce a (possibly negative) machine integer into [0, p).
  Fe from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return r < 0 ? static_cast<Fe>(r + static_cast<long long>(p_)) : static_cast<Fe>(r);
  }

  Fe sample(Rng& rng) const { return rng.below(p_); }

  bool operator==(const FieldContext& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
  Fe inv2_;
};

}  // namespace trank
