#pragma once

#include <string>

#include "sigcalc/ints.hpp"

namespace sigcalc {

// An integer class modulo m, m >= 2. Values are kept in [0, m) and every
// binary operation insists on equal moduli.
struct Residue {
  Int v;
  Int m;

  Residue() : v(0), m(2) {}

  Residue(Int value, Int modulus) : m(std::move(modulus)) {
    if (m < 2) fail(errc::bad_modulus, "modulus must be >= 2");
    v = mod_floor(value, m);
  }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.m == b.m && a.v == b.v;
  }
  friend bool operator!=(const Residue& a, const Residue& b) {
    return !(a == b);
  }

  Residue with(Int value) const { return Residue(std::move(value), m); }

  friend Residue operator+(const Residue& a, const Residue& b) {
    a.check(b);
    return a.with(a.v + b.v);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    a.check(b);
    return a.with(a.v - b.v);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    a.check(b);
    return a.with(a.v * b.v);
  }

  Residue pow(const Int& e) const {
    if (e < 0) fail(errc::invalid_config, "negative exponent");
    if (e == 0) return with(1);
    return with(powm(v, e, m));
  }

  Residue inv() const { return with(inv_mod(v, m)); }

  bool is_zero() const { return v == 0; }

  std::string str() const { return v.str() + " mod " + m.str(); }

 private:
  void check(const Residue& other) const {
    if (m != other.m)
      fail(errc::modulus_mismatch,
           "moduli " + m.str() + " and " + other.m.str() + " differ");
  }
};

inline Residue mod_pow(const Residue& base, const Int& exp) {
  return base.pow(exp);
}

inline Residue mod_inv(const Residue& a) { return a.inv(); }

// Legendre symbol (a / ell) for an odd prime ell, via the Euler criterion.
inline int legendre(const Int& a, const Int& ell) {
  if (ell < 3 || ell % 2 == 0) fail(errc::bad_modulus, "ell must be odd >= 3");
  Int r = powm(mod_floor(a, ell), (ell - 1) / 2, ell);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Square root of a nonzero quadratic residue modulo an odd prime.
// Of the two roots, returns the one with the smaller representative.
inline Residue sqrt_mod_prime(const Residue& a) {
  const Int& ell = a.m;
  if (ell < 3 || ell % 2 == 0) fail(errc::bad_modulus, "ell must be odd >= 3");
  if (a.v == 0) fail(errc::zero_input, "sqrt of zero residue");
  if (legendre(a.v, ell) != 1)
    fail(errc::non_residue, a.str() + " is not a square");

  Int r;
  if (ell % 4 == 3) {
    r = powm(a.v, (ell + 1) / 4, ell);
  } else {
    // Tonelli-Shanks. Scales to ell near 2^64 without any scanning.
    Int q = ell - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    Int z = 2;
    while (legendre(z, ell) != -1) ++z;
    Int c = powm(z, q, ell);
    Int t = powm(a.v, q, ell);
    r = powm(a.v, (q + 1) / 2, ell);
    unsigned m_ord = s;
    while (t != 1) {
      Int t2 = t;
      unsigned i = 0;
      while (t2 != 1) {
        t2 = t2 * t2 % ell;
        ++i;
      }
      Int b = c;
      for (unsigned j = 0; j + i + 1 < m_ord; ++j) b = b * b % ell;
      r = r * b % ell;
      c = b * b % ell;
      t = t * c % ell;
      m_ord = i;
    }
  }
  Int other = ell - r;
  return Residue(r < other ? r : other, ell);
}

// Lifts a simple square root of a modulo ell to the unique root modulo
// ell^2 that reduces to it. The root must be nonzero mod ell.
inline Residue hensel_sqrt_lift(const Int& a, const Residue& root_mod_l) {
  const Int& ell = root_mod_l.m;
  if (ell < 3 || ell % 2 == 0) fail(errc::bad_modulus, "ell must be odd >= 3");
  if (root_mod_l.v == 0)
    fail(errc::singular_lift, "root 0 has vanishing derivative");
  if (mod_floor(root_mod_l.v * root_mod_l.v - a, ell) != 0)
    fail(errc::precondition_violated, "root^2 != a (mod ell)");
  Int m2 = ell * ell;
  const Int& r0 = root_mod_l.v;
  // r = r0 + t*ell with t = (a - r0^2)/ell * (2 r0)^{-1} mod ell.
  Int t = mod_floor(mod_floor(a - r0 * r0, m2) / ell * inv_mod(2 * r0, ell),
                    ell);
  return Residue(r0 + t * ell, m2);
}

// Unique factorization of a unit w modulo ell^2 as xi * (1+ell)^y with
// xi^(ell-1) = 1: xi is mod ell^2, y is mod ell.
struct TeichmullerParts {
  Residue xi;  // order divides ell - 1
  Residue y;
};

inline TeichmullerParts teichmuller_decompose(const Residue& w) {
  Int ell = isqrt(w.m);
  if (ell * ell != w.m || ell < 3 || ell % 2 == 0)
    fail(errc::bad_modulus, "modulus must be ell^2 for an odd prime ell");
  if (gcd(w.v, ell) != 1)
    fail(errc::not_unit, w.str() + " is divisible by " + ell.str());
  // (1+ell)^ell = 1 mod ell^2, so w^ell kills the (1+ell)-part and fixes xi.
  Residue xi = w.pow(ell);
  Int u = mod_floor(w.v * inv_mod(xi.v, w.m), w.m);  // u = (1+ell)^y = 1 + y*ell
  Int y = mod_floor((u - 1) / ell, ell);
  return TeichmullerParts{xi, Residue(y, ell)};
}

}  // namespace sigcalc
