#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigcalc/gf.hpp"
#include "sigcalc/modarith.hpp"
#include "sigcalc/primes.hpp"

// Real quadratic field arithmetic for radicands D = f^2 * d, d squarefree.
//
// Conventions fixed here (everything downstream depends on them):
//   * The split place u over ell is the one where sqrt(D) maps to +r, with
//     r the Hensel lift modulo ell^2 of the smaller square root of D mod ell.
//   * At an inert p with an attached quadratic-extension context (p, t), the
//     residue map sends sqrt(D) to s*sqrt(t) where s is the smaller square
//     root of D/t mod p. Sign ambiguities are resolved by choosing the sign
//     of the element being reduced, never by flipping the map.
//   * Class numbers are for the maximal order of Q(sqrt(d)); the fundamental
//     unit may have half-integer coordinates when d = 1 mod 4.

namespace sigcalc {

enum class SplittingType { Inert, Split, Ramified };

inline SplittingType splitting_type(const Int& D, const Int& q) {
  switch (legendre(D, q)) {
    case 1: return SplittingType::Split;
    case -1: return SplittingType::Inert;
    default: return SplittingType::Ramified;
  }
}

inline const char* splitting_name(SplittingType t) {
  switch (t) {
    case SplittingType::Inert: return "inert";
    case SplittingType::Split: return "split";
    default: return "ramified";
  }
}

struct QuadFieldCtx {
  Int D;  // radicand as given, nonsquare > 1
  Int d;  // squarefree kernel, D = f^2 d
  Int f;
  Int ell;       // odd prime split in the field
  Residue root_l;  // r mod ell^2, the canonical root of D
  Int p;         // odd prime, p != ell
  SplittingType p_type;
  std::optional<Fp2Ctx> fp2;     // attached when p is inert
  std::optional<Int> inert_s;    // sqrt(D/t) mod p, smaller representative
  std::optional<Int> split_root_p;  // smaller root of D mod p when split
};

// x + y * sqrt(D), exact integer coordinates.
struct QuadElem {
  Int x;
  Int y;
};

inline QuadFieldCtx make_field_ctx(const Int& D, const Int& ell, const Int& p,
                                   std::optional<Fp2Ctx> fp2 = std::nullopt) {
  if (D < 2 || is_square(D)) fail(errc::invalid_config, "radicand must be a nonsquare >= 2");
  if (!is_odd_prime(ell) || !is_odd_prime(p) || ell == p)
    fail(errc::invalid_config, "ell and p must be distinct odd primes");
  if (legendre(D, ell) != 1)
    fail(errc::non_residue, "field does not split at ell");

  QuadFieldCtx ctx;
  ctx.D = D;
  ctx.d = squarefree_kernel(D, ctx.f);
  ctx.ell = ell;
  Residue small_root = sqrt_mod_prime(Residue(D, ell));
  ctx.root_l = hensel_sqrt_lift(D, small_root);
  ctx.p = p;
  ctx.p_type = splitting_type(D, p);
  if (ctx.p_type == SplittingType::Split) {
    ctx.split_root_p = sqrt_mod_prime(Residue(D, p)).v;
  }
  if (fp2) {
    if (fp2->p != p) fail(errc::invalid_config, "attached context has wrong p");
    if (ctx.p_type == SplittingType::Inert) {
      Int dt = mod_floor(D * inv_mod(fp2->t, p), p);
      ctx.inert_s = sqrt_mod_prime(Residue(dt, p)).v;
    }
    ctx.fp2 = std::move(fp2);
  }
  return ctx;
}

class QuadField {
 public:
  explicit QuadField(QuadFieldCtx ctx) : ctx_(std::move(ctx)) {}

  const QuadFieldCtx& ctx() const { return ctx_; }
  const Int& D() const { return ctx_.D; }

  QuadElem make(Int x, Int y) const { return QuadElem{std::move(x), std::move(y)}; }
  QuadElem one() const { return QuadElem{1, 0}; }

  QuadElem mul(const QuadElem& a, const QuadElem& b) const {
    return QuadElem{a.x * b.x + a.y * b.y * ctx_.D, a.x * b.y + a.y * b.x};
  }

  QuadElem conj(const QuadElem& a) const { return QuadElem{a.x, -a.y}; }

  QuadElem pow(QuadElem base, Int e) const {
    if (e < 0) fail(errc::invalid_config, "negative exponent");
    QuadElem r = one();
    while (e > 0) {
      if ((e & 1) != 0) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Exact integer norm x^2 - D y^2.
  Int norm(const QuadElem& a) const { return a.x * a.x - ctx_.D * a.y * a.y; }

  // Residue map at the inert prime p, landing in F_{p^2} = F_p(sqrt t).
  Fp2Elem reduce_at_inert(const QuadElem& e) const {
    if (ctx_.p_type != SplittingType::Inert)
      fail(errc::not_inert, "p is " + std::string(splitting_name(ctx_.p_type)) +
                                " in this field");
    if (!ctx_.fp2 || !ctx_.inert_s)
      fail(errc::invalid_config, "no quadratic-extension context attached");
    const Int& p = ctx_.p;
    return Fp2Elem{mod_floor(e.x, p), mod_floor(e.y * *ctx_.inert_s, p)};
  }

  // Residue map at a split place determined by a chosen root of D mod q.
  Residue reduce_at_split(const QuadElem& e, const Residue& root) const {
    if (mod_floor(root.v * root.v - ctx_.D, root.m) != 0)
      fail(errc::bad_root, "root^2 != D modulo " + root.m.str());
    return Residue(e.x + e.y * root.v, root.m);
  }

  // Image in Z/ell^2 under sqrt(D) -> which_root * r.
  Residue embed_mod_l2(const QuadElem& e, int which_root = +1) const {
    const Residue& r = ctx_.root_l;
    Int rt = which_root >= 0 ? r.v : r.m - r.v;
    return Residue(e.x + e.y * rt, r.m);
  }

  // True iff the image w of e at the chosen place over ell satisfies
  // w^(ell-1) != 1 mod ell^2; equivalently its Teichmuller y-part is nonzero.
  bool unit_condition_at_u(const QuadElem& e, int which_root = +1) const {
    Residue w = embed_mod_l2(e, which_root);
    if (gcd(w.v, ctx_.ell) != 1)
      fail(errc::not_local_unit, "element is not a unit at the place over ell");
    return w.pow(ctx_.ell - 1).v != 1;
  }

 private:
  QuadFieldCtx ctx_;
};

// ---------------------------------------------------------------------------
// Continued-fraction infrastructure on the field discriminant.
// ---------------------------------------------------------------------------

namespace detail {

inline Int field_discriminant(const Int& d) {
  return mod_floor(d, 4) == 1 ? d : 4 * d;
}

// Floor division for positive divisor.
inline Int fdiv(const Int& x, const Int& y) {
  Int q = x / y;
  if (x % y != 0 && (x < 0) != (y < 0)) --q;
  return q;
}

// A primitive integral ideal Z*a + Z*(b + sqrt(Delta))/2 of norm a > 0,
// with b^2 = Delta mod 4a. b is only meaningful modulo 2a.
struct IdealNode {
  Int a;
  Int b;
  friend bool operator==(const IdealNode& x, const IdealNode& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const IdealNode& x, const IdealNode& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

// Reduced: |sqrt(Delta) - 2a| < b < sqrt(Delta), in exact integer terms.
inline bool ideal_is_reduced(const Int& s, const IdealNode& n) {
  return n.b <= s && n.b >= s + 1 - 2 * n.a && n.b >= 2 * n.a - s;
}

// Representative of b mod 2a in the normalization window.
inline Int normalize_b(const Int& s, const Int& a, const Int& b) {
  if (a <= s) return s - mod_floor(s - b, 2 * a);  // window (sqrt(D)-2a, sqrt(D)]
  Int r = mod_floor(b, 2 * a);                     // window (-a, a]
  if (r > a) r -= 2 * a;
  return r;
}

// One continued-fraction step from a reduced node; stays reduced.
inline IdealNode ideal_rho(const Int& delta, const Int& s, const IdealNode& n) {
  Int q = fdiv(n.b + s, 2 * n.a);
  Int b2 = 2 * n.a * q - n.b;
  Int a2 = (delta - b2 * b2) / (4 * n.a);
  IdealNode out{a2, b2};
  if (a2 < 1 || !ideal_is_reduced(s, out))
    fail(errc::overflow, "continued-fraction step left the reduced cycle");
  return out;
}

// Walks an arbitrary ideal into the reduced cycle of its class.
inline IdealNode ideal_reduce(const Int& delta, const Int& s, IdealNode n) {
  for (int iter = 0; iter < 100000; ++iter) {
    n.b = normalize_b(s, n.a, n.b);
    if (ideal_is_reduced(s, n)) return n;
    Int q = fdiv(n.b + s, 2 * n.a);
    Int b2 = 2 * n.a * q - n.b;
    Int a2 = (delta - b2 * b2) / (4 * n.a);
    if (a2 < 0) {
      a2 = -a2;
      b2 = -b2;
    }
    if (a2 == 0) fail(errc::overflow, "square discriminant in reduction");
    n = IdealNode{a2, b2};
  }
  fail(errc::overflow, "ideal reduction did not terminate");
}

// The reduced principal ideal (the ring of integers itself, normalized).
inline IdealNode principal_node(const Int& delta, const Int& s) {
  Int b = (mod_floor(s, 2) == mod_floor(delta, 2)) ? s : s - 1;
  return IdealNode{Int(1), b};
}

// Length of the principal cycle; the fundamental unit has norm (-1)^length.
inline std::size_t principal_cycle_length(const Int& delta, const Int& s,
                                          std::size_t cap) {
  IdealNode start = principal_node(delta, s);
  IdealNode cur = start;
  for (std::size_t steps = 0;;) {
    cur = ideal_rho(delta, s, cur);
    ++steps;
    if (cur == start) return steps;
    if (steps >= cap)
      fail(errc::overflow, "principal cycle exceeds configured bound");
  }
}

// ---------------------------------------------------------------------------
// Reduced indefinite binary quadratic forms (a, b, c), b^2 - 4ac = Delta.
// ---------------------------------------------------------------------------

struct Form {
  Int a;
  Int b;
  Int c;
  friend bool operator==(const Form& x, const Form& y) {
    return x.a == y.a && x.b == y.b;  // c is determined by (a, b)
  }
  friend bool operator<(const Form& x, const Form& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

inline bool form_is_reduced(const Int& delta, const Form& f) {
  if (f.b <= 0 || f.b * f.b >= delta) return false;
  Int a2 = 2 * (f.a < 0 ? -f.a : f.a);
  // |sqrt(Delta) - 2|a|| < b  <=>  (2|a| + b)^2 > Delta and
  //                               (2|a| <= b or (2|a| - b)^2 < Delta)
  if ((a2 + f.b) * (a2 + f.b) <= delta) return false;
  if (a2 > f.b && (a2 - f.b) * (a2 - f.b) >= delta) return false;
  return true;
}

inline std::vector<Form> enumerate_reduced_forms(const Int& delta) {
  Int s = isqrt(delta);
  std::vector<Form> out;
  for (Int b = (mod_floor(delta, 2) == 0) ? 2 : 1; b <= s; b += 2) {
    Int m4 = (delta - b * b) / 4;  // = |a*c|, a and c of opposite sign
    for (Int u = 1; u * u <= m4; ++u) {
      if (m4 % u != 0) continue;
      for (const Int& aa : {u, m4 / u}) {
        Int cc = m4 / aa;
        Form f{aa, b, -cc};
        if (form_is_reduced(delta, f)) {
          out.push_back(f);
          out.push_back(Form{-aa, b, cc});
        }
        if (aa == cc) break;  // square divisor, same pair twice
      }
    }
  }
  return out;
}

// Reduction-operator step on a reduced form. The leading coefficient of the
// successor is the old trailing one; its sign alternates along the cycle.
inline Form form_rho(const Int& delta, const Int& s, const Form& f) {
  Int cabs = f.c < 0 ? -f.c : f.c;
  Int b2 = s - mod_floor(s + f.b, 2 * cabs);
  Int c2 = (b2 * b2 - delta) / (4 * f.c);
  Form out{f.c, b2, c2};
  if (!form_is_reduced(delta, out))
    fail(errc::overflow, "form reduction step left the reduced set");
  return out;
}

inline Int count_form_cycles(const Int& delta) {
  Int s = isqrt(delta);
  std::vector<Form> forms = enumerate_reduced_forms(delta);
  std::map<Form, bool> visited;
  for (const Form& f : forms) visited[f] = false;
  Int cycles = 0;
  for (const Form& f : forms) {
    if (visited[f]) continue;
    ++cycles;
    Form cur = f;
    std::size_t guard = 0;
    do {
      visited[cur] = true;
      cur = form_rho(delta, s, cur);
      if (++guard > forms.size())
        fail(errc::overflow, "form cycle walk did not close");
    } while (!(cur == f));
  }
  return cycles;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fundamental unit.
// ---------------------------------------------------------------------------

// (x + y*sqrt(d)) / den with den in {1, 2}; half-integer coordinates occur
// exactly for d = 1 mod 4 fields whose fundamental unit is not in Z[sqrt d].
struct FundamentalUnit {
  Int d;
  Int x;
  Int y;
  Int den;
  int nrm;  // +1 or -1

  std::string str() const {
    return "(" + x.str() + "+" + y.str() + "*sqrt(" + d.str() + "))/" +
           den.str();
  }
};

inline FundamentalUnit unit_mul(const FundamentalUnit& u,
                                const FundamentalUnit& v) {
  if (u.d != v.d) fail(errc::invalid_config, "units of different fields");
  FundamentalUnit out;
  out.d = u.d;
  out.x = u.x * v.x + u.y * v.y * u.d;
  out.y = u.x * v.y + u.y * v.x;
  out.den = u.den * v.den;
  Int g = gcd(gcd(out.x, out.y), out.den);
  out.x /= g;
  out.y /= g;
  out.den /= g;
  out.nrm = u.nrm * v.nrm;
  return out;
}

inline FundamentalUnit unit_pow(const FundamentalUnit& u, unsigned k) {
  if (k == 0) fail(errc::invalid_config, "unit_pow needs k >= 1");
  FundamentalUnit out = u;
  for (unsigned i = 1; i < k; ++i) out = unit_mul(out, u);
  return out;
}

inline Int unit_norm_num(const FundamentalUnit& u) {
  // norm * den^2, an exact integer
  return u.x * u.x - u.d * u.y * u.y;
}

struct CfLimits {
  std::size_t period_cap = 1u << 20;
};

// Fundamental unit of the maximal order of Q(sqrt(d)), d the squarefree
// kernel of D, computed by accumulating one period of the continued-fraction
// walk around the principal cycle. Exact; norm is (-1)^period.
inline FundamentalUnit fundamental_unit(const Int& D,
                                        const CfLimits& limits = {}) {
  if (D < 2 || is_square(D))
    fail(errc::invalid_config, "radicand must be a nonsquare >= 2");
  Int f;
  Int d = squarefree_kernel(D, f);
  Int delta = detail::field_discriminant(d);
  Int s = isqrt(delta);

  detail::IdealNode start = detail::principal_node(delta, s);
  detail::IdealNode cur = start;
  Int X = 1, Y = 0, den = 1;
  std::size_t steps = 0;
  for (;;) {
    Int q = detail::fdiv(cur.b + s, 2 * cur.a);
    Int b2 = 2 * cur.a * q - cur.b;
    Int a2 = (delta - b2 * b2) / (4 * cur.a);
    // step multiplier (b2 + sqrt(Delta)) / (2a)
    Int nx = X * b2 + Y * delta;
    Int ny = X + Y * b2;
    X = nx;
    Y = ny;
    den *= 2 * cur.a;
    cur = detail::IdealNode{a2, b2};
    ++steps;
    if (cur == start) break;
    if (steps >= limits.period_cap)
      fail(errc::overflow, "continued-fraction period exceeds bound");
  }

  FundamentalUnit u;
  u.d = d;
  u.x = X;
  u.y = (delta == 4 * d) ? 2 * Y : Y;
  u.den = den;
  Int g = gcd(gcd(u.x, u.y), u.den);
  u.x /= g;
  u.y /= g;
  u.den /= g;
  u.nrm = (steps % 2 == 1) ? -1 : 1;
  if (u.den != 1 && u.den != 2)
    fail(errc::overflow, "unit accumulation lost integrality");
  if (unit_norm_num(u) != Int(u.nrm) * u.den * u.den)
    fail(errc::overflow, "unit norm check failed");
  return u;
}

// Images of a (possibly half-integral) unit under the residue maps fixed by
// the field context. Consistency with QuadElem reductions: sqrt(d) maps to
// (image of sqrt(D)) / f.
inline Residue embed_unit_mod_l2(const QuadField& K, const FundamentalUnit& u,
                                 int which_root = +1) {
  const QuadFieldCtx& ctx = K.ctx();
  if (u.d != ctx.d) fail(errc::invalid_config, "unit from a different field");
  const Residue& r = ctx.root_l;
  Int rd = mod_floor(r.v * inv_mod(ctx.f, r.m), r.m);
  if (which_root < 0) rd = r.m - rd;
  Int val = (u.x + u.y * rd) * inv_mod(u.den, r.m);
  return Residue(val, r.m);
}

inline Fp2Elem reduce_unit_at_inert(const QuadField& K,
                                    const FundamentalUnit& u) {
  const QuadFieldCtx& ctx = K.ctx();
  if (u.d != ctx.d) fail(errc::invalid_config, "unit from a different field");
  if (ctx.p_type != SplittingType::Inert || !ctx.inert_s)
    fail(errc::not_inert, "no inert residue map available");
  const Int& p = ctx.p;
  Int sd = mod_floor(*ctx.inert_s * inv_mod(ctx.f, p), p);
  Int di = inv_mod(u.den, p);
  return Fp2Elem{mod_floor(u.x * di, p), mod_floor(u.y * sd * di, p)};
}

inline Residue reduce_unit_at_split(const QuadField& K,
                                    const FundamentalUnit& u,
                                    const Residue& root) {
  const QuadFieldCtx& ctx = K.ctx();
  if (u.d != ctx.d) fail(errc::invalid_config, "unit from a different field");
  if (mod_floor(root.v * root.v - ctx.D, root.m) != 0)
    fail(errc::bad_root, "root^2 != D modulo " + root.m.str());
  Int rd = mod_floor(root.v * inv_mod(ctx.f, root.m), root.m);
  return Residue((u.x + u.y * rd) * inv_mod(u.den, root.m), root.m);
}

// ---------------------------------------------------------------------------
// Class number, two independent routes.
// ---------------------------------------------------------------------------

enum class ClassNumberMethod { FormCycles, BruteForceIdeals };

struct ClassNumberReport {
  Int h;
  ClassNumberMethod method;
  bool l_divides;
};

// Primary route: cycles of reduced indefinite forms count the narrow class
// number; the wide one follows from the norm of the fundamental unit.
inline ClassNumberReport class_number(const Int& D, const Int& ell = 0,
                                      const CfLimits& limits = {}) {
  if (D < 2 || is_square(D))
    fail(errc::invalid_config, "radicand must be a nonsquare >= 2");
  Int f;
  Int d = squarefree_kernel(D, f);
  Int delta = detail::field_discriminant(d);
  Int s = isqrt(delta);
  Int h_narrow = detail::count_form_cycles(delta);
  std::size_t r = detail::principal_cycle_length(delta, s, limits.period_cap);
  Int h = h_narrow;
  if (r % 2 == 0) {
    if (h_narrow % 2 != 0)
      fail(errc::overflow, "narrow class number parity check failed");
    h = h_narrow / 2;
  }
  bool ld = ell >= 2 && h % ell == 0;
  return ClassNumberReport{h, ClassNumberMethod::FormCycles, ld};
}

// Oracle route: every class contains an integral ideal of norm at most
// sqrt(Delta)/2; enumerate them all and count the distinct reduced cycles
// they fall into.
inline ClassNumberReport class_number_ideal_oracle(const Int& D,
                                                   const Int& ell = 0) {
  if (D < 2 || is_square(D))
    fail(errc::invalid_config, "radicand must be a nonsquare >= 2");
  Int f;
  Int d = squarefree_kernel(D, f);
  Int delta = detail::field_discriminant(d);
  Int s = isqrt(delta);
  Int minkowski = s / 2;

  std::map<detail::IdealNode, detail::IdealNode> cycle_of;  // reduced -> key
  std::map<detail::IdealNode, bool> seen_key;
  Int classes = 0;
  for (Int a = 1; a <= minkowski; ++a) {
    for (Int b = 0; b < 2 * a; ++b) {
      if (mod_floor(b * b - delta, 4 * a) != 0) continue;
      detail::IdealNode red = detail::ideal_reduce(delta, s, {a, b});
      auto it = cycle_of.find(red);
      detail::IdealNode key;
      if (it != cycle_of.end()) {
        key = it->second;
      } else {
        // walk the cycle once, remember its least node as canonical key
        std::vector<detail::IdealNode> cycle{red};
        detail::IdealNode cur = red;
        for (;;) {
          cur = detail::ideal_rho(delta, s, cur);
          if (cur == red) break;
          cycle.push_back(cur);
          if (cycle.size() > (1u << 22))
            fail(errc::overflow, "ideal cycle walk did not close");
        }
        key = *std::min_element(cycle.begin(), cycle.end());
        for (const auto& n : cycle) cycle_of[n] = key;
      }
      if (!seen_key[key]) {
        seen_key[key] = true;
        ++classes;
      }
    }
  }
  bool ld = ell >= 2 && classes % ell == 0;
  return ClassNumberReport{classes, ClassNumberMethod::BruteForceIdeals, ld};
}

}  // namespace sigcalc
