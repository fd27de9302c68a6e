#pragma once

#include <cstdint>
#include <random>

#include "sigcalc/ints.hpp"

namespace sigcalc {

// Deterministic source of randomness. mt19937_64 output is fully specified
// by the standard, and all range reduction below is rejection-based, so the
// sequence of draws for a given seed is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n), unbiased. n >= 1.
  std::uint64_t below_u64(std::uint64_t n) {
    if (n == 0) fail(errc::invalid_config, "empty sampling range");
    if (n == 1) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      std::uint64_t v = eng_();
      if (v < limit) return v % n;
    }
  }

  // Uniform in [0, n) for arbitrary-precision n >= 1.
  Int below(const Int& n) {
    if (n <= 0) fail(errc::invalid_config, "empty sampling range");
    if (fits_u64(n)) return Int(below_u64(to_u64(n)));
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    unsigned words = (bits + 63) / 64;
    for (;;) {
      Int v = 0;
      for (unsigned i = 0; i < words; ++i) v = (v << 64) | Int(eng_());
      v >>= words * 64 - bits;
      if (v < n) return v;
    }
  }

  // Uniform in [lo, hi] inclusive.
  Int between(const Int& lo, const Int& hi) {
    if (hi < lo) fail(errc::invalid_config, "empty sampling range");
    return lo + below(hi - lo + 1);
  }

  bool coin() { return (eng_() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sigcalc
