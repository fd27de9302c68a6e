#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sigcalc/modarith.hpp"
#include "sigcalc/primes.hpp"
#include "sigcalc/rng.hpp"

namespace sigcalc {

// Concrete model of the quadratic extension of F_p: fix a non-residue t and
// represent elements as a0 + b0*sqrt(t). The representation is kept concrete
// because reductions from quadratic fields at an inert prime land on
// +-b0*sqrt(t) and the sign matters downstream.
struct Fp2Ctx {
  Int p;
  Int t;

  friend bool operator==(const Fp2Ctx& a, const Fp2Ctx& b) {
    return a.p == b.p && a.t == b.t;
  }
};

struct Fp2Elem {
  Int a0;
  Int b0;
};

class Fp2 {
 public:
  using Elem = Fp2Elem;

  Fp2(Int p, Int t) : ctx_{std::move(p), Int(0)} {
    if (!is_odd_prime(ctx_.p)) fail(errc::bad_modulus, "p must be an odd prime");
    ctx_.t = mod_floor(t, ctx_.p);
    if (legendre(ctx_.t, ctx_.p) != -1)
      fail(errc::non_residue, "t must be a non-residue mod p");
  }

  explicit Fp2(Fp2Ctx ctx) : Fp2(ctx.p, ctx.t) {}

  const Fp2Ctx& ctx() const { return ctx_; }
  const Int& p() const { return ctx_.p; }
  const Int& t() const { return ctx_.t; }
  Int order() const { return ctx_.p * ctx_.p - 1; }

  Elem make(const Int& a0, const Int& b0) const {
    return Elem{mod_floor(a0, ctx_.p), mod_floor(b0, ctx_.p)};
  }
  Elem zero() const { return Elem{0, 0}; }
  Elem one() const { return Elem{1, 0}; }

  bool is_zero(const Elem& x) const { return x.a0 == 0 && x.b0 == 0; }
  bool eq(const Elem& x, const Elem& y) const {
    return x.a0 == y.a0 && x.b0 == y.b0;
  }

  Elem add(const Elem& x, const Elem& y) const {
    return make(x.a0 + y.a0, x.b0 + y.b0);
  }
  Elem sub(const Elem& x, const Elem& y) const {
    return make(x.a0 - y.a0, x.b0 - y.b0);
  }
  Elem neg(const Elem& x) const { return make(-x.a0, -x.b0); }

  // (a + b sqrt t)(c + d sqrt t) = (ac + bd t) + (ad + bc) sqrt t
  Elem mul(const Elem& x, const Elem& y) const {
    return make(x.a0 * y.a0 + x.b0 * y.b0 * ctx_.t,
                x.a0 * y.b0 + x.b0 * y.a0);
  }

  Elem inv(const Elem& x) const {
    if (is_zero(x)) fail(errc::division_by_zero, "inverse of zero");
    // 1/(a + b sqrt t) = (a - b sqrt t)/Nm
    Int n = norm(x);
    Int ninv = inv_mod(n, ctx_.p);
    return make(x.a0 * ninv, -x.b0 * ninv);
  }

  Elem pow(Elem base, Int e) const {
    if (e < 0) fail(errc::invalid_config, "negative exponent");
    Elem r = one();
    while (e > 0) {
      if ((e & 1) != 0) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Frobenius x -> x^p, which is conjugation a + b sqrt t -> a - b sqrt t.
  Elem frobenius(const Elem& x) const { return make(x.a0, -x.b0); }

  // Nm(a + b sqrt t) = a^2 - t b^2, an element of F_p.
  Int norm(const Elem& x) const {
    return mod_floor(x.a0 * x.a0 - ctx_.t * x.b0 * x.b0, ctx_.p);
  }

  // Injective serialization, used as a hash key by the generic DLP code.
  std::string key(const Elem& x) const {
    return x.a0.str() + "," + x.b0.str();
  }

  std::string str(const Elem& x) const {
    return x.a0.str() + "+" + x.b0.str() + "*sqrt(" + ctx_.t.str() + ")";
  }

 private:
  Fp2Ctx ctx_;
};

// Random non-residue modulo p. Density 1/2, so the loop terminates fast;
// the result is a deterministic function of the seed state.
inline Int find_nonresidue(const Int& p, Rng& rng) {
  if (!is_odd_prime(p)) fail(errc::bad_modulus, "p must be an odd prime");
  for (;;) {
    Int t = rng.between(2, p - 1);
    if (legendre(t, p) == -1) return t;
  }
}

// Random generator of F_{p^2}^x. The complete factorization of p^2 - 1 is an
// explicit input: this is where the library is honest about assuming that
// factoring is available.
inline Fp2Elem find_generator(const Fp2& F, const Factorization& fac,
                              Rng& rng) {
  Int order = F.order();
  if (factorization_product(fac) != order)
    fail(errc::bad_factorization, "factors do not multiply to p^2-1");
  for (;;) {
    Fp2Elem g = F.make(rng.below(F.p()), rng.below(F.p()));
    if (F.is_zero(g)) continue;
    bool ok = true;
    for (const auto& [q, e] : fac) {
      (void)e;
      if (F.eq(F.pow(g, order / q), F.one())) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// True iff x is an l-th power in F_{p^2}^x, i.e. x^((p^2-1)/l) = 1.
inline bool is_lth_power(const Fp2& F, const Fp2Elem& x, const Int& ell) {
  if (F.is_zero(x)) fail(errc::zero_input, "zero has no discrete log");
  Int order = F.order();
  if (ell < 2 || order % ell != 0)
    fail(errc::bad_divisor, "ell does not divide p^2-1");
  return F.eq(F.pow(x, order / ell), F.one());
}

// F_p^x as a multiplicative group, shaped like Fp2 so the generic DLP code
// can run over either residue group.
class FpUnits {
 public:
  using Elem = Int;

  explicit FpUnits(Int p) : p_(std::move(p)) {
    if (!is_odd_prime(p_)) fail(errc::bad_modulus, "p must be an odd prime");
  }

  const Int& p() const { return p_; }
  Int order() const { return p_ - 1; }

  Elem make(const Int& v) const { return mod_floor(v, p_); }
  Elem one() const { return Int(1); }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  Elem mul(const Elem& x, const Elem& y) const { return x * y % p_; }
  Elem inv(const Elem& x) const {
    if (x == 0) fail(errc::division_by_zero, "inverse of zero");
    return inv_mod(x, p_);
  }
  Elem pow(const Elem& base, const Int& e) const {
    if (e < 0) fail(errc::invalid_config, "negative exponent");
    return powm(base, e, p_);
  }
  std::string key(const Elem& x) const { return x.str(); }

 private:
  Int p_;
};

// Units of Z/mZ for composite m (used with m = ell^2).
class ResidueUnits {
 public:
  using Elem = Int;

  explicit ResidueUnits(Int m) : m_(std::move(m)) {
    if (m_ < 2) fail(errc::bad_modulus, "modulus must be >= 2");
  }

  const Int& modulus() const { return m_; }

  Elem make(const Int& v) const { return mod_floor(v, m_); }
  Elem one() const { return Int(1); }
  bool eq(const Elem& x, const Elem& y) const { return x == y; }
  Elem mul(const Elem& x, const Elem& y) const { return x * y % m_; }
  Elem inv(const Elem& x) const { return inv_mod(x, m_); }
  Elem pow(const Elem& base, const Int& e) const {
    if (e < 0) fail(errc::invalid_config, "negative exponent");
    return powm(base, e, m_);
  }
  std::string key(const Elem& x) const { return x.str(); }

 private:
  Int m_;
};

}  // namespace sigcalc
