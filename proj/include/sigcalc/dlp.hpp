#pragma once

#include <concepts>
#include <string>
#include <unordered_map>

#include "sigcalc/ints.hpp"
#include "sigcalc/primes.hpp"

namespace sigcalc {

// The group handle supplies element operations and an injective string key;
// Fp2, FpUnits and ResidueUnits all model this.
template <typename G>
concept CyclicGroup = requires(const G& g, const typename G::Elem& a,
                               const typename G::Elem& b, const Int& e) {
  { g.mul(a, b) } -> std::convertible_to<typename G::Elem>;
  { g.inv(a) } -> std::convertible_to<typename G::Elem>;
  { g.pow(a, e) } -> std::convertible_to<typename G::Elem>;
  { g.one() } -> std::convertible_to<typename G::Elem>;
  { g.eq(a, b) } -> std::convertible_to<bool>;
  { g.key(a) } -> std::convertible_to<std::string>;
};

// Least x >= 0 with g^x = a, searching x < bound. O(sqrt(bound)) time and
// space. Throws NotInSubgroup when no exponent below the bound works.
template <CyclicGroup G>
Int bsgs(const G& grp, const typename G::Elem& g, const typename G::Elem& a,
         const Int& bound) {
  if (bound < 1) fail(errc::invalid_config, "bound must be >= 1");
  Int step = isqrt(bound - 1) + 1;  // step^2 >= bound

  // Baby steps keep the smallest exponent per element so the result is the
  // least solution even when ord(g) < bound.
  std::unordered_map<std::string, Int> table;
  table.reserve(static_cast<std::size_t>(to_u64(step)));
  typename G::Elem cur = grp.one();
  for (Int j = 0; j < step; ++j) {
    table.emplace(grp.key(cur), j);  // emplace keeps the first (smallest) j
    cur = grp.mul(cur, g);
  }

  typename G::Elem giant = grp.inv(grp.pow(g, step));
  typename G::Elem probe = a;
  for (Int i = 0; i * step < bound; ++i) {
    auto it = table.find(grp.key(probe));
    if (it != table.end()) {
      Int x = i * step + it->second;
      if (x < bound) return x;
    }
    probe = grp.mul(probe, giant);
  }
  fail(errc::not_in_subgroup, "no discrete log below bound " + bound.str());
}

// Exhaustive-scan discrete log; the independent oracle against which the
// fast paths are checked. Least x >= 0 with g^x = a, x < bound.
template <CyclicGroup G>
Int dlog_exhaustive(const G& grp, const typename G::Elem& g,
                    const typename G::Elem& a, const Int& bound) {
  typename G::Elem cur = grp.one();
  for (Int x = 0; x < bound; ++x) {
    if (grp.eq(cur, a)) return x;
    cur = grp.mul(cur, g);
  }
  fail(errc::not_in_subgroup, "no discrete log below bound " + bound.str());
}

// Pohlig-Hellman for an element g of exact order `order` with the given
// factorization. Returns x mod order with g^x = a.
template <CyclicGroup G>
Int pohlig_hellman(const G& grp, const typename G::Elem& g,
                   const typename G::Elem& a, const Int& order,
                   const Factorization& fac) {
  if (factorization_product(fac) != order)
    fail(errc::bad_factorization, "factors do not multiply to the order");
  Int x = 0, m = 1;
  for (const auto& [q, e] : fac) {
    Int qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    // Solve in the q^e-part, digit by digit in base q.
    typename G::Elem gq = grp.pow(g, order / qe);    // order q^e
    typename G::Elem a_sub = grp.pow(a, order / qe); // in <gq>
    typename G::Elem gamma = grp.pow(g, order / q);  // order q
    typename G::Elem gq_inv = grp.inv(gq);
    Int xq = 0, qk = 1;
    for (unsigned i = 0; i < e; ++i) {
      typename G::Elem shifted = grp.mul(a_sub, grp.pow(gq_inv, xq));
      typename G::Elem target = grp.pow(shifted, qe / (qk * q));
      Int d = bsgs(grp, gamma, target, q);
      xq += d * qk;
      qk *= q;
    }
    x = (m == 1) ? xq : crt_pair(x, m, xq, qe);
    m *= qe;
  }
  return mod_floor(x, order);
}

// Discrete log modulo a prime ell dividing the group order: both sides are
// pushed into the order-ell quotient and a size-ell DLP is solved there.
template <CyclicGroup G>
Int dlog_mod_l(const G& grp, const typename G::Elem& g,
               const typename G::Elem& a, const Int& ell, const Int& order) {
  if (ell < 2 || order % ell != 0)
    fail(errc::bad_divisor, "ell does not divide the group order");
  typename G::Elem zg = grp.pow(g, order / ell);
  typename G::Elem za = grp.pow(a, order / ell);
  if (grp.eq(zg, grp.one()))
    fail(errc::not_in_subgroup, "base has no order-ell component");
  return bsgs(grp, zg, za, ell);
}

}  // namespace sigcalc
