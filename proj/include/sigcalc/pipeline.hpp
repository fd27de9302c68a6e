#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sigcalc/lift.hpp"

namespace sigcalc {

// Which construction applies to a (p, l) pair. Exactly one of l | p+1 and
// l | p-1 can hold for odd l.
inline LiftCase classify_pair(const Int& p, const Int& ell) {
  if (!is_odd_prime(p) || !is_odd_prime(ell) || p == ell)
    fail(errc::invalid_config, "p and l must be distinct odd primes");
  if ((p + 1) % ell == 0) return LiftCase::A;
  if ((p - 1) % ell == 0) return LiftCase::B;
  fail(errc::invalid_config, "l divides neither p+1 nor p-1");
}

// One full experiment: sample a generator and a random target a = g^m with
// m nonzero mod l, lift it, compute the signature through the DLP oracle,
// recover m from the signature, and cross-check the oracle against an
// exhaustive scan.
struct RoundtripOutcome {
  LiftCase which = LiftCase::A;
  Int p, l;
  std::uint64_t seed = 0;
  Int t;       // quadratic non-residue defining F_{p^2}
  Int m_true;  // sampled exponent of the target

  std::optional<LiftInstance> instance;
  std::optional<Signature> signature;
  Int m_oracle, m_recovered, m_scan;  // mod l, valid when instance is set
  bool congruences_ok = false;
  bool pass = false;
  std::string error_token;  // machine-readable code when construction failed
  std::string error_detail;
};

inline RoundtripOutcome run_roundtrip(const Int& p, const Int& ell,
                                      const ConstructOptions& opts = {}) {
  RoundtripOutcome out;
  out.which = classify_pair(p, ell);
  out.p = p;
  out.l = ell;
  out.seed = opts.seed;

  Rng rng(opts.seed);
  out.t = find_nonresidue(p, rng);
  Fp2 F(p, out.t);
  Factorization fac = factorize(F.order());
  Fp2Elem g = find_generator(F, fac, rng);

  Int m;
  do {
    m = rng.between(1, F.order() - 1);
  } while (m % ell == 0);
  out.m_true = m;
  Fp2Elem a = F.pow(g, m);

  ConstructOptions copts = opts;
  copts.seed = rng.next_u64();  // construction uses its own derived stream
  try {
    LiftInstance inst = (out.which == LiftCase::A)
                            ? construct_case_a(F, g, a, ell, copts)
                            : construct_case_b(F, g, a, ell, copts);
    out.instance = std::move(inst);
  } catch (const error& e) {
    out.error_token = errc_token(e.code());
    out.error_detail = e.what();
    return out;
  }

  const LiftInstance& inst = *out.instance;
  Signature sig = signature_from_dlp(inst);
  out.m_oracle = mod_floor(target_dlog_at_v(inst), ell);
  out.m_scan = mod_floor(target_dlog_at_v(inst, ExhaustiveDlpOracle{}), ell);
  out.m_recovered = recover_dlog(inst, sig).v;
  out.signature = std::move(sig);

  out.congruences_ok = true;
  if (inst.which == LiftCase::B) {
    const CaseBRefs& r = inst.case_b();
    QuadField K = inst.K();
    Residue v2 = r.root_v.with(-r.root_v.v);
    out.congruences_ok =
        K.reduce_at_split(inst.alpha, r.root_v) == r.a_ref &&
        K.reduce_at_split(inst.alpha, v2) == r.b_tilde.with(-r.b_tilde.v);
  }

  out.pass = out.congruences_ok && out.m_recovered == mod_floor(m, ell) &&
             out.m_oracle == out.m_scan;
  return out;
}

// ---------------------------------------------------------------------------
// Flat instance record: decimal strings only, fixed field order.
// ---------------------------------------------------------------------------

struct InstanceRecord {
  std::string case_;  // "A" or "B"
  std::string p, l, t, k, x, D, alpha_x, alpha_y, y, sigma, h, seed;
};

inline InstanceRecord make_record(const Signature& sig) {
  const LiftInstance& inst = sig.instance;
  InstanceRecord r;
  r.case_ = lift_case_name(inst.which);
  r.p = dec(inst.p);
  r.l = dec(inst.l);
  if (inst.which == LiftCase::A) {
    r.t = dec(inst.case_a().fp2.t);
  } else {
    const auto& fp2 = inst.case_b().fp2;
    r.t = fp2 ? dec(fp2->t) : "0";
  }
  r.k = dec(inst.k);
  r.x = dec(inst.x);
  r.D = dec(inst.field.D);
  r.alpha_x = dec(inst.alpha.x);
  r.alpha_y = dec(inst.alpha.y);
  r.y = dec(inst.y.v);
  r.sigma = dec(sig.sigma.v);
  r.h = dec(inst.class_report.h);
  r.seed = dec(Int(inst.seed));
  return r;
}

inline std::vector<std::pair<std::string, std::string>> record_fields(
    const InstanceRecord& r) {
  return {{"case", r.case_}, {"p", r.p},       {"l", r.l},
          {"t", r.t},        {"k", r.k},       {"x", r.x},
          {"D", r.D},        {"alpha_x", r.alpha_x}, {"alpha_y", r.alpha_y},
          {"y", r.y},        {"sigma", r.sigma},     {"h", r.h},
          {"seed", r.seed}};
}

inline std::string record_to_text(const InstanceRecord& r) {
  std::ostringstream os;
  for (const auto& [k, v] : record_fields(r)) os << k << " " << v << "\n";
  return os.str();
}

inline InstanceRecord record_from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string key, value;
  while (is >> key >> value) kv[key] = value;
  InstanceRecord r;
  auto take = [&](const char* name) -> std::string {
    auto it = kv.find(name);
    if (it == kv.end())
      fail(errc::invalid_config, std::string("record misses field ") + name);
    return it->second;
  };
  r.case_ = take("case");
  r.p = take("p");
  r.l = take("l");
  r.t = take("t");
  r.k = take("k");
  r.x = take("x");
  r.D = take("D");
  r.alpha_x = take("alpha_x");
  r.alpha_y = take("alpha_y");
  r.y = take("y");
  r.sigma = take("sigma");
  r.h = take("h");
  r.seed = take("seed");
  return r;
}

// Validates the arithmetic consistency of a parsed record and recovers
// m = -y * sigma^{-1} mod l from it.
inline Residue recover_from_record(const InstanceRecord& r) {
  if (r.case_ != "A" && r.case_ != "B")
    fail(errc::invalid_config, "case must be A or B");
  Int p = parse_int(r.p), l = parse_int(r.l);
  classify_pair(p, l);
  Int x = parse_int(r.x), D = parse_int(r.D);
  Int expect_D = r.case_ == "A" ? x * x - 1 : x * x + 1;
  if (D != expect_D) fail(errc::invalid_config, "D does not match x");
  if (parse_int(r.alpha_x) != x)
    fail(errc::invalid_config, "alpha_x does not match x");
  Int ay = parse_int(r.alpha_y);
  if (ay != 1 && ay != -1) fail(errc::invalid_config, "alpha_y must be +-1");
  Int y = parse_int(r.y);
  if (y <= 0 || y >= l) fail(errc::invalid_config, "y out of range");
  Int sigma = parse_int(r.sigma);
  if (mod_floor(sigma, l) == 0) fail(errc::zero_signature, "sigma = 0");
  return Residue(-y * inv_mod(sigma, l), l);
}

// ---------------------------------------------------------------------------
// Parameter generation for experiments.
// ---------------------------------------------------------------------------

// Random (p, l) with l | p+1 (case A) or l | p-1 (case B) and p of the
// requested bit size. Desk scale keeps everything far below word size.
inline std::pair<Int, Int> gen_params(unsigned bits, LiftCase which,
                                      std::uint64_t seed) {
  if (bits < 4 || bits > 28)
    fail(errc::invalid_config, "bits must be in [4, 28]");
  Rng rng(seed);
  Int lo = Int(1) << (bits - 1);
  Int hi = (Int(1) << bits) - 1;
  for (int tries = 0; tries < 200000; ++tries) {
    Int p = rng.between(lo, hi);
    if (!is_odd_prime(p)) continue;
    Int base = which == LiftCase::A ? p + 1 : p - 1;
    // collect odd prime factors, pick one deterministically
    std::vector<Int> odd;
    for (const auto& [q, e] : factorize(base)) {
      (void)e;
      if (q > 2 && q != p) odd.push_back(q);
    }
    if (odd.empty()) continue;
    Int l = odd[static_cast<std::size_t>(
        rng.below_u64(static_cast<std::uint64_t>(odd.size())))];
    return {p, l};
  }
  fail(errc::search_exhausted, "no parameter pair found");
}

}  // namespace sigcalc
