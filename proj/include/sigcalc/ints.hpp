#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>

#include "sigcalc/errors.hpp"

namespace sigcalc {

// All arithmetic is exact. Decimal strings are the only serialized form.
// Expression templates are off so Int behaves as a plain value type in
// ternaries, initializer lists and auto deductions.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

using boost::multiprecision::gcd;
using boost::multiprecision::powm;

// Least nonnegative representative of a mod m, for any sign of a. m >= 1.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) fail(errc::invalid_config, "isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

// Extended gcd: returns g = gcd(a, b) and sets x, y with a*x + b*y = g.
inline Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, cur_x = 0;
  Int old_y = 0, cur_y = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * cur_x;
    old_x = cur_x;
    cur_x = t;
    t = old_y - q * cur_y;
    old_y = cur_y;
    cur_y = t;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

// Inverse of a modulo m; throws not_invertible when gcd(a, m) != 1.
inline Int inv_mod(const Int& a, const Int& m) {
  Int x, y;
  Int g = xgcd(mod_floor(a, m), m, x, y);
  if (g != 1)
    fail(errc::not_invertible,
         "no inverse of " + a.str() + " modulo " + m.str());
  return mod_floor(x, m);
}

// Solves x = r1 mod m1, x = r2 mod m2 for coprime moduli; result mod m1*m2.
inline Int crt_pair(const Int& r1, const Int& m1, const Int& r2,
                    const Int& m2) {
  Int t = mod_floor((r2 - r1) * inv_mod(m1, m2), m2);
  return r1 + m1 * t;
}

inline bool fits_u64(const Int& n) {
  return n >= 0 && n <= Int(UINT64_MAX);
}

inline std::uint64_t to_u64(const Int& n) {
  if (!fits_u64(n)) fail(errc::overflow, "value does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

inline std::string dec(const Int& n) { return n.str(); }

inline Int parse_int(const std::string& s) {
  if (s.empty()) fail(errc::invalid_config, "empty integer string");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(errc::invalid_config, "bad integer string: " + s);
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      fail(errc::invalid_config, "bad integer string: " + s);
  return Int(s);
}

}  // namespace sigcalc
