#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sigcalc/dlp.hpp"
#include "sigcalc/gf.hpp"
#include "sigcalc/quad.hpp"
#include "sigcalc/rng.hpp"

// Lifting discrete-logarithm targets to units of a real quadratic field.
//
// Case A (l | p+1): the target a in F_{p^2}^x is projected to the norm-one
// subgroup via a -> a^(p-1) = a0 + b0*sqrt(t). An integer x = a0 + kp (+pl)
// is searched so that x^2 - 1 is a square mod l and the unit
// alpha = x +- sqrt(x^2-1) avoids the trivial (l-1)-power congruence mod
// l^2. The field K = Q(sqrt(x^2-1)) is inert at p, and the sign of alpha is
// chosen so that its residue at the inert place equals a^(p-1).
//
// Case B (l | p-1): the target is pushed to F_p^x by the norm, split as
// a~ = c + d with c^2 - d^2 = 1, and d is shifted to x = d + kp (+pl) so
// that x^2 + 1 is a square mod l and alpha = x + sqrt(x^2+1) avoids the
// same congruence. K = Q(sqrt(x^2+1)) splits at p; at the place v fixed by
// sqrt(x^2+1) -> c the unit reduces to a~, and to -1/a~ at the conjugate
// place.
//
// In both cases the constructed unit alpha and the field must pass the full
// invariant gate (unit norm, nonzero Teichmuller exponent at both places
// over l, correct residue at v, target not an l-th power at v, class number
// of K not divisible by l) before an instance is returned.

namespace sigcalc {

enum class LiftCase { A, B };

inline const char* lift_case_name(LiftCase c) {
  return c == LiftCase::A ? "A" : "B";
}

struct CaseARefs {
  Fp2Ctx fp2;
  Fp2Elem g_ref;  // g^(p-1), order p+1, norm 1
  Fp2Elem a_ref;  // a^(p-1), the lifted target
};

struct CaseBRefs {
  Residue g_ref;            // Nm(g), generator of F_p^x
  Residue a_ref;            // Nm(a) = g_ref^m
  Residue b_tilde;          // a_ref^(-1)
  Residue root_v;           // the root c of D mod p that defines the place v
  std::optional<Fp2Ctx> fp2;  // present when built from F_{p^2} inputs
};

struct LiftInstance {
  LiftCase which;
  Int p;
  Int l;
  Int k;  // accepted shift
  Int x;  // integer after the mod-l^2 adjustment
  QuadFieldCtx field;
  QuadElem alpha;
  Residue y;  // Teichmuller exponent of alpha at u, nonzero mod l
  ClassNumberReport class_report;
  std::variant<CaseARefs, CaseBRefs> refs;
  std::uint64_t seed = 0;

  const CaseARefs& case_a() const { return std::get<CaseARefs>(refs); }
  const CaseBRefs& case_b() const { return std::get<CaseBRefs>(refs); }
  QuadField K() const { return QuadField(field); }
};

struct ConstructOptions {
  std::uint64_t seed = 1;
  Int k_budget = 0;       // 0 means 8*l draws of k
  int field_budget = 20;  // fields rejected for l | h before giving up
  CfLimits cf;
};

namespace detail {

// The x in {base, base + p*l} for which (x + sqrt(x^2 - c))^(l-1) != 1
// mod l^2 (equivalently for the conjugate root, since the two powers are
// inverse to each other). The branch is never trusted blindly: each
// candidate is verified directly. Both may qualify; the first one always
// does when the other fails.
inline std::vector<Int> adjust_for_unit_condition(const Int& base, int c,
                                                  const Int& ell,
                                                  const Int& p) {
  Int m2 = ell * ell;
  Int min_base = c == 1 ? 2 : 1;  // keep the radicand positive
  std::vector<Int> out;
  for (const Int& cand : {base, base + p * ell}) {
    if (cand < min_base) continue;
    Int S = cand * cand - c;
    if (mod_floor(S, ell) == 0) continue;
    Residue r0 = sqrt_mod_prime(Residue(S, ell));
    Residue r = hensel_sqrt_lift(S, r0);
    Residue w = Residue(cand + r.v, m2);
    if (w.pow(ell - 1).v != 1) out.push_back(cand);
  }
  return out;
}

// Tracks fields rejected because l divides the class number. The search is
// abandoned loudly once too many distinct fields are obstructed, and an
// exhausted search that saw obstructions reports them rather than a plain
// exhaustion.
class ObstructionLog {
 public:
  explicit ObstructionLog(int budget) : budget_(budget) {}

  void record(const Int& D) {
    ++total_;
    distinct_.insert(D);
    if (distinct_.size() >= static_cast<std::size_t>(budget_))
      fail(errc::class_number_obstruction,
           "l divides the class number for " +
               std::to_string(distinct_.size()) + " distinct fields");
  }

  [[noreturn]] void exhausted() const {
    if (total_ > 0)
      fail(errc::class_number_obstruction,
           "every admissible field had class number divisible by l (" +
               std::to_string(total_) + " rejections)");
    fail(errc::search_exhausted, "no admissible k within budget");
  }

 private:
  int budget_;
  std::set<Int> distinct_;
  std::size_t total_ = 0;
};

[[noreturn]] inline void bug(const std::string& what) {
  fail(errc::precondition_violated, "internal invariant failed: " + what);
}

}  // namespace detail

// The Teichmuller exponent of alpha at the place u; nonzero for any valid
// instance.
inline Residue compute_y(const LiftInstance& inst) {
  QuadField K = inst.K();
  return teichmuller_decompose(K.embed_mod_l2(inst.alpha, +1)).y;
}

inline LiftInstance construct_case_a(const Fp2& F, const Fp2Elem& g,
                                     const Fp2Elem& a, const Int& ell,
                                     const ConstructOptions& opts = {}) {
  const Int& p = F.p();
  if (!is_odd_prime(ell) || ell == p)
    fail(errc::invalid_config, "ell must be an odd prime distinct from p");
  if ((p + 1) % ell != 0 || (p - 1) % ell == 0)
    fail(errc::invalid_config, "case A needs l | p+1 and l coprime to p-1");
  if (F.is_zero(a)) fail(errc::zero_input, "target must be nonzero");
  if (is_lth_power(F, a, ell))
    fail(errc::degenerate_target, "target is an l-th power: m = 0 mod l");

  Fp2Elem a_t = F.pow(a, p - 1);
  Fp2Elem g_t = F.pow(g, p - 1);
  if (a_t.b0 == 0)
    fail(errc::degenerate_target,
         "norm-one target lies in F_p: m is (p+1)/2 or p+1");

  Rng rng(opts.seed);
  Int budget = opts.k_budget > 0 ? opts.k_budget : 8 * ell;
  detail::ObstructionLog obstructed(opts.field_budget);

  for (Int attempt = 0; attempt < budget; ++attempt) {
    Int k = rng.below(ell);
    Int a1 = a_t.a0 + k * p;
    if (legendre(a1 * a1 - 1, ell) != 1) continue;

    for (const Int& x : detail::adjust_for_unit_condition(a1, +1, ell, p)) {
      Int D = x * x - 1;

      ClassNumberReport h = class_number(D, ell, opts.cf);
      if (h.l_divides) {
        obstructed.record(D);
        continue;
      }

      QuadFieldCtx ctx = make_field_ctx(D, ell, p, F.ctx());
      if (ctx.p_type != SplittingType::Inert) detail::bug("p must be inert");
      QuadField K(ctx);

      // Sign of alpha: make the residue of sqrt(D) at v match +b0*sqrt(t).
      Fp2Elem root_img = K.reduce_at_inert(K.make(0, 1));
      int sign;
      if (root_img.b0 == a_t.b0)
        sign = +1;
      else if (root_img.b0 == mod_floor(-a_t.b0, p))
        sign = -1;
      else
        detail::bug("residue of sqrt(D) is not +-b0*sqrt(t)");
      QuadElem alpha = K.make(x, sign);

      if (K.norm(alpha) != 1) detail::bug("alpha must have norm 1");
      if (!K.unit_condition_at_u(alpha, +1) ||
          !K.unit_condition_at_u(alpha, -1))
        detail::bug("unit condition at the places over l");
      Fp2Elem at_v = K.reduce_at_inert(alpha);
      if (!F.eq(at_v, a_t)) detail::bug("alpha must reduce to the target at v");
      if (is_lth_power(F, a_t, ell))
        detail::bug("target became an l-th power at v");

      LiftInstance inst;
      inst.which = LiftCase::A;
      inst.p = p;
      inst.l = ell;
      inst.k = k;
      inst.x = x;
      inst.field = std::move(ctx);
      inst.alpha = alpha;
      inst.class_report = h;
      inst.refs = CaseARefs{F.ctx(), g_t, a_t};
      inst.seed = opts.seed;
      inst.y = compute_y(inst);
      if (inst.y.v == 0) detail::bug("Teichmuller exponent must be nonzero");
      return inst;
    }
  }
  obstructed.exhausted();
}

inline LiftInstance construct_case_b(const Int& p, const Residue& g_tilde,
                                     const Residue& a_tilde, const Int& ell,
                                     const ConstructOptions& opts = {},
                                     std::optional<Fp2Ctx> fp2 = std::nullopt) {
  if (!is_odd_prime(p) || !is_odd_prime(ell) || ell == p)
    fail(errc::invalid_config, "p and ell must be distinct odd primes");
  if ((p - 1) % ell != 0)
    fail(errc::invalid_config, "case B needs l | p-1");
  if (g_tilde.m != p || a_tilde.m != p)
    fail(errc::invalid_config, "references must be residues mod p");
  if (a_tilde.v == 0) fail(errc::zero_input, "target must be nonzero");
  if (a_tilde.pow((p - 1) / ell).v == 1)
    fail(errc::degenerate_target, "target is an l-th power: m = 0 mod l");

  Residue b_t = a_tilde.inv();
  Residue inv2 = Residue(2, p).inv();
  Residue c_res = (a_tilde + b_t) * inv2;
  Residue d_res = (a_tilde - b_t) * inv2;
  if (d_res.v == 0)
    fail(errc::degenerate_target, "a~ = 1/a~: m is (p-1)/2 or p-1");
  if (c_res.v == 0) detail::bug("c = 0 implies an l-th power target");

  Rng rng(opts.seed);
  Int budget = opts.k_budget > 0 ? opts.k_budget : 8 * ell;
  detail::ObstructionLog obstructed(opts.field_budget);

  for (Int attempt = 0; attempt < budget; ++attempt) {
    Int k = rng.below(ell);
    Int d1 = d_res.v + k * p;
    if (legendre(d1 * d1 + 1, ell) != 1) continue;

    for (const Int& x : detail::adjust_for_unit_condition(d1, -1, ell, p)) {
      Int D = x * x + 1;

      ClassNumberReport h = class_number(D, ell, opts.cf);
      if (h.l_divides) {
        obstructed.record(D);
        continue;
      }

      QuadFieldCtx ctx = make_field_ctx(D, ell, p, fp2);
      if (ctx.p_type != SplittingType::Split) detail::bug("p must split");
      QuadField K(ctx);

      QuadElem alpha = K.make(x, 1);
      Residue root_v = c_res;                  // sqrt(D) -> c defines v
      Residue root_v2 = c_res.with(-c_res.v);  // the conjugate place v'

      if (K.norm(alpha) != -1) detail::bug("alpha must have norm -1");
      if (!K.unit_condition_at_u(alpha, +1) ||
          !K.unit_condition_at_u(alpha, -1))
        detail::bug("unit condition at the places over l");
      if (K.reduce_at_split(alpha, root_v) != a_tilde)
        detail::bug("alpha must reduce to a~ at v");
      if (K.reduce_at_split(alpha, root_v2) != b_t.with(-b_t.v))
        detail::bug("alpha must reduce to -1/a~ at v'");

      LiftInstance inst;
      inst.which = LiftCase::B;
      inst.p = p;
      inst.l = ell;
      inst.k = k;
      inst.x = x;
      inst.field = std::move(ctx);
      inst.alpha = alpha;
      inst.class_report = h;
      inst.refs = CaseBRefs{g_tilde, a_tilde, b_t, root_v, fp2};
      inst.seed = opts.seed;
      inst.y = compute_y(inst);
      if (inst.y.v == 0) detail::bug("Teichmuller exponent must be nonzero");
      return inst;
    }
  }
  obstructed.exhausted();
}

inline LiftInstance construct_case_b(const Fp2& F, const Fp2Elem& g,
                                     const Fp2Elem& a, const Int& ell,
                                     const ConstructOptions& opts = {}) {
  if (F.is_zero(a)) fail(errc::zero_input, "target must be nonzero");
  Residue g_t(F.norm(g), F.p());
  Residue a_t(F.norm(a), F.p());
  return construct_case_b(F.p(), g_t, a_t, ell, opts, F.ctx());
}

// ---------------------------------------------------------------------------
// Signatures.
// ---------------------------------------------------------------------------

struct Signature {
  Residue sigma;              // mod l
  std::string generator_ref;  // description of the reference generator
  LiftInstance instance;
};

// Default oracle: subgroup discrete log through the generic machinery.
struct SubgroupDlpOracle {
  template <CyclicGroup G>
  Int operator()(const G& grp, const typename G::Elem& g,
                 const typename G::Elem& a, const Int& ell,
                 const Int& order) const {
    return dlog_mod_l(grp, g, a, ell, order);
  }
};

// Ground-truth oracle: exhaustive scan in the order-l quotient.
struct ExhaustiveDlpOracle {
  template <CyclicGroup G>
  Int operator()(const G& grp, const typename G::Elem& g,
                 const typename G::Elem& a, const Int& ell,
                 const Int& order) const {
    typename G::Elem zg = grp.pow(g, order / ell);
    typename G::Elem za = grp.pow(a, order / ell);
    return dlog_exhaustive(grp, zg, za, ell);
  }
};

// Discrete log of the target at v with respect to the reference generator,
// reduced mod l via the ambient residue group.
template <class Oracle = SubgroupDlpOracle>
Int target_dlog_at_v(const LiftInstance& inst, Oracle oracle = {}) {
  if (inst.which == LiftCase::A) {
    const CaseARefs& r = inst.case_a();
    Fp2 F(r.fp2);
    return oracle(F, r.g_ref, r.a_ref, inst.l, F.order());
  }
  const CaseBRefs& r = inst.case_b();
  FpUnits G(inst.p);
  return oracle(G, r.g_ref.v, r.a_ref.v, inst.l, inst.p - 1);
}

template <class Oracle = SubgroupDlpOracle>
Signature signature_from_dlp(const LiftInstance& inst, Oracle oracle = {}) {
  Int m = mod_floor(target_dlog_at_v(inst, oracle), inst.l);
  if (m == 0)
    fail(errc::oracle_failure,
         "oracle returned m = 0 for a non-l-th-power target");
  Residue sigma =
      Residue(-inv_mod(m, inst.l) * inst.y.v, inst.l);

  std::string gref;
  if (inst.which == LiftCase::A) {
    const CaseARefs& r = inst.case_a();
    gref = "F_{p^2}(p=" + inst.p.str() + ",t=" + r.fp2.t.str() + "): g~=" +
           r.g_ref.a0.str() + "+" + r.g_ref.b0.str() + "*sqrt(t)";
  } else {
    gref = "F_p(p=" + inst.p.str() + "): g~=" + inst.case_b().g_ref.v.str();
  }
  return Signature{sigma, gref, inst};
}

// m = -y * sigma^{-1} mod l.
inline Residue recover_dlog(const LiftInstance& inst, const Signature& sig) {
  if (sig.instance.p != inst.p || sig.instance.l != inst.l ||
      sig.instance.x != inst.x || sig.instance.k != inst.k)
    fail(errc::invalid_config, "signature belongs to a different instance");
  if (sig.sigma.v == 0) fail(errc::zero_signature, "sigma = 0");
  return Residue(-inst.y.v * inv_mod(sig.sigma.v, inst.l), inst.l);
}

// ---------------------------------------------------------------------------
// Unit proportionality: the image vectors of any two units at (u, v) are
// proportional mod l, because the unit group modulo l-th powers is a line.
// ---------------------------------------------------------------------------

struct LocalPair {
  Residue y;  // exponent at u (Teichmuller part)
  Residue m;  // exponent at v (discrete log class)
};

inline LocalPair unit_local_pair(const LiftInstance& inst,
                                 const FundamentalUnit& eps) {
  QuadField K = inst.K();
  Residue w = embed_unit_mod_l2(K, eps, +1);
  Residue y = teichmuller_decompose(w).y;
  Int m;
  if (inst.which == LiftCase::A) {
    const CaseARefs& r = inst.case_a();
    Fp2 F(r.fp2);
    Fp2Elem img = reduce_unit_at_inert(K, eps);
    m = dlog_mod_l(F, r.g_ref, img, inst.l, F.order());
  } else {
    const CaseBRefs& r = inst.case_b();
    FpUnits G(inst.p);
    Residue img = reduce_unit_at_split(K, eps, r.root_v);
    m = dlog_mod_l(G, r.g_ref.v, img.v, inst.l, inst.p - 1);
  }
  return LocalPair{y, Residue(m, inst.l)};
}

inline LocalPair alpha_local_pair(const LiftInstance& inst) {
  Int m = target_dlog_at_v(inst);
  return LocalPair{inst.y, Residue(m, inst.l)};
}

inline bool unit_proportionality_check(const LiftInstance& inst,
                                       const CfLimits& limits = {}) {
  FundamentalUnit eps = fundamental_unit(inst.field.D, limits);
  LocalPair pe = unit_local_pair(inst, eps);
  LocalPair pa = alpha_local_pair(inst);
  return mod_floor(pe.y.v * pa.m.v - pa.y.v * pe.m.v, inst.l) == 0;
}

}  // namespace sigcalc
