#include "trank/field.hpp"

#include <cstdlib>

namespace trank {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return acc;
}

}  // namespace

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t default_modulus() {
  if (const char* env = std::getenv("TRANK_MODULUS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 5 && is_prime(v)) return v;
    throw ParameterError("TRANK_MODULUS must be a prime >= 5");
  }
  return kDefaultModulus;
}

FieldContext::FieldContext(std::uint64_t p) : p_(p), inv2_(0) {
  if (p == 2 || p == 3) throw ParameterError("field characteristic 2 and 3 are not supported");
  if (p < 5 || !is_prime(p)) throw ParameterError("field modulus must be a prime >= 5");
  if (p >= (1ull << 62)) throw ParameterError("field modulus must be below 2^62");
  inv2_ = inv(2 % p_);
}

Fe FieldContext::pow(Fe base, std::uint64_t e) const { return powmod(base % p_, e, p_); }

Fe FieldContext::inv(Fe a) const {
  if (a % p_ == 0) throw ParameterError("division by zero in field inverse");
  return powmod(a % p_, p_ - 2, p_);
}

}  // namespace trank
