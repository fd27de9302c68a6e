#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sigcalc/ints.hpp"

namespace sigcalc {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primality at desk scale: everything this library constructs fits in 64
// bits; larger inputs are rejected rather than probabilistically accepted.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (!fits_u64(n)) fail(errc::overflow, "primality test beyond 64-bit scale");
  return is_prime_u64(to_u64(n));
}

inline bool is_odd_prime(const Int& n) { return n > 2 && is_prime(n); }

namespace detail {

inline constexpr std::uint32_t kSieveBound = 1u << 22;

// Fixed sieve of primes below 2^22, built once on first use. Immutable
// afterwards, so concurrent readers are safe.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveBound, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kSieveBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i;
           j < kSieveBound; j += i)
        composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

using Factorization = std::vector<std::pair<Int, unsigned>>;

// Trial-division factorization. Desk scale: handles any n whose second
// largest prime factor is below 2^22; beyond that an Overflow error is
// raised rather than returning a wrong answer.
inline Factorization factorize(Int n) {
  if (n < 1) fail(errc::invalid_config, "factorize requires n >= 1");
  Factorization out;
  if (n == 1) return out;
  for (std::uint32_t p : detail::small_primes()) {
    if (Int(p) * p > n) break;
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(Int(p), e);
    }
    if (n == 1) break;
  }
  if (n > 1) {
    if (!is_prime(n))
      fail(errc::overflow, "cofactor " + n.str() + " beyond desk scale");
    out.emplace_back(n, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Int factorization_product(const Factorization& fac) {
  Int prod = 1;
  for (const auto& [p, e] : fac)
    for (unsigned i = 0; i < e; ++i) prod *= p;
  return prod;
}

// Largest square divisor split: n = f^2 * d with d squarefree.
inline Int squarefree_kernel(const Int& n, Int& f_out) {
  Int d = 1;
  f_out = 1;
  for (const auto& [p, e] : factorize(n)) {
    for (unsigned i = 0; i + 1 < e; i += 2) f_out *= p;
    if (e % 2) d *= p;
  }
  return d;
}

}  // namespace sigcalc
