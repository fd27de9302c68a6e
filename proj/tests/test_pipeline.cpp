#include <catch2/catch_amalgamated.hpp>

#include "sigcalc/pipeline.hpp"
#include "sigcalc/verify.hpp"

using namespace sigcalc;

TEST_CASE("classify_pair") {
  CHECK(classify_pair(13, 7) == LiftCase::A);
  CHECK(classify_pair(11, 5) == LiftCase::B);
  CHECK(classify_pair(7, 3) == LiftCase::B);  // 3 | 6
  CHECK_THROWS_AS(classify_pair(13, 5), error);
  CHECK_THROWS_AS(classify_pair(7, 7), error);
  CHECK_THROWS_AS(classify_pair(15, 7), error);  // 15 not prime
}

TEST_CASE("run_roundtrip passes on both cases") {
  SECTION("case A (13, 7)") {
    ConstructOptions opts;
    opts.seed = 1;
    RoundtripOutcome out = run_roundtrip(13, 7, opts);
    REQUIRE(out.instance.has_value());
    CHECK(out.which == LiftCase::A);
    CHECK(out.pass);
    CHECK(out.m_recovered == mod_floor(out.m_true, Int(7)));
    CHECK(out.m_oracle == out.m_scan);
  }

  SECTION("case B (11, 5)") {
    ConstructOptions opts;
    opts.seed = 1;
    RoundtripOutcome out = run_roundtrip(11, 5, opts);
    REQUIRE(out.instance.has_value());
    CHECK(out.which == LiftCase::B);
    CHECK(out.pass);
    CHECK(out.congruences_ok);
  }

  SECTION("invalid pair is rejected before any work") {
    CHECK_THROWS_AS(run_roundtrip(13, 5, ConstructOptions{}), error);
  }
}

TEST_CASE("roundtrip is deterministic per seed") {
  ConstructOptions opts;
  opts.seed = 42;
  RoundtripOutcome a = run_roundtrip(13, 7, opts);
  RoundtripOutcome b = run_roundtrip(13, 7, opts);
  CHECK(a.m_true == b.m_true);
  CHECK(a.t == b.t);
  REQUIRE((a.instance && b.instance));
  CHECK(a.instance->k == b.instance->k);
  CHECK(a.instance->x == b.instance->x);
  CHECK(a.signature->sigma == b.signature->sigma);

  ConstructOptions other;
  other.seed = 43;
  RoundtripOutcome c = run_roundtrip(13, 7, other);
  CHECK(c.m_true != a.m_true);  // different draw
}

TEST_CASE("instance records") {
  ConstructOptions opts;
  opts.seed = 17;
  RoundtripOutcome out = run_roundtrip(13, 7, opts);
  REQUIRE(out.signature.has_value());
  InstanceRecord rec = make_record(*out.signature);

  SECTION("field order and decimal content") {
    auto fields = record_fields(rec);
    REQUIRE(fields.size() == 13);
    CHECK(fields.front().first == "case");
    CHECK(fields.back().first == "seed");
    CHECK(rec.case_ == "A");
    CHECK(parse_int(rec.D) == parse_int(rec.x) * parse_int(rec.x) - 1);
  }

  SECTION("text round trip and recovery") {
    std::string text = record_to_text(rec);
    InstanceRecord back = record_from_text(text);
    CHECK(record_to_text(back) == text);
    Residue m = recover_from_record(back);
    CHECK(m.v == mod_floor(out.m_true, Int(7)));
  }

  SECTION("tampered records are rejected") {
    InstanceRecord bad = rec;
    bad.D = dec(parse_int(rec.D) + 1);
    CHECK_THROWS_AS(recover_from_record(bad), error);

    InstanceRecord zero_sig = rec;
    zero_sig.sigma = "0";
    try {
      recover_from_record(zero_sig);
      FAIL("expected ZeroSignature");
    } catch (const error& e) {
      CHECK(e.code() == errc::zero_signature);
    }
  }

  SECTION("case B records carry t and the B radicand shape") {
    ConstructOptions b_opts;
    b_opts.seed = 3;
    RoundtripOutcome outb = run_roundtrip(11, 5, b_opts);
    REQUIRE(outb.signature.has_value());
    InstanceRecord recb = make_record(*outb.signature);
    CHECK(recb.case_ == "B");
    CHECK(parse_int(recb.D) ==
          parse_int(recb.x) * parse_int(recb.x) + 1);
    Residue m = recover_from_record(recb);
    CHECK(m.v == mod_floor(outb.m_true, Int(5)));
  }
}

TEST_CASE("gen_params") {
  auto [pa, la] = gen_params(4, LiftCase::A, 9);
  CHECK(is_odd_prime(pa));
  CHECK(is_odd_prime(la));
  CHECK((pa + 1) % la == 0);
  CHECK(pa >= 8);
  CHECK(pa <= 15);

  auto [pb, lb] = gen_params(4, LiftCase::B, 9);
  CHECK((pb - 1) % lb == 0);

  auto [pa2, la2] = gen_params(4, LiftCase::A, 9);
  CHECK(pa == pa2);
  CHECK(la == la2);

  auto [pc, lc] = gen_params(12, LiftCase::B, 5);
  CHECK(is_odd_prime(pc));
  CHECK((pc - 1) % lc == 0);

  CHECK_THROWS_AS(gen_params(64, LiftCase::A, 1), error);
}

TEST_CASE("verification suites at reduced bounds") {
  SECTION("symbol counts for l <= 61") {
    SuiteResult r = suite_symbol_counts(61);
    CHECK(r.pass);
  }
  SECTION("pl-shift on 60 samples") {
    SuiteResult r = suite_pl_shift(60, 11);
    CHECK(r.pass);
  }
  SECTION("class numbers up to 80") {
    SuiteResult r = suite_class_numbers(80);
    CHECK(r.pass);
  }
}

TEST_CASE("symbol counts, frozen examples") {
  SymbolCounts c1 = legendre_shift_counts(7, 1);
  CHECK(c1.zeros == 2);
  CHECK(c1.residues == 2);
  CHECK(c1.nonresidues == 3);

  SymbolCounts c3 = legendre_shift_counts(7, 3);
  CHECK(c3.zeros == 0);
  CHECK(c3.residues == 3);
  CHECK(c3.nonresidues == 4);

  SymbolCounts cm1 = legendre_shift_counts(5, -1);  // (-1/5) = 1
  CHECK(cm1.zeros == 2);
  CHECK(cm1.residues == 1);
  CHECK(cm1.nonresidues == 2);

  CHECK_THROWS_AS(legendre_shift_counts(7, 14), error);
}

TEST_CASE("pl-shift guards") {
  // c = 2, l = 5: 2^4 = 16 != 1 mod 25, precondition must fail
  try {
    pl_shift_breaks_unity(5, 3, 1, 2);
    FAIL("expected PreconditionViolated");
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition_violated);
  }

  // a = 0, l = 5, c = -1: w = 0 + sqrt(1) = 1, 1^4 = 1: preconditions hold
  CHECK(pl_shift_breaks_unity(5, 3, 0, -1));

  // find an a violating the (l-1)-power precondition and check the guard
  bool guard_seen = false;
  for (Int a = 0; a < 25 && !guard_seen; ++a) {
    if (legendre(a * a - 1, 5) != 1) continue;
    try {
      pl_shift_breaks_unity(5, 3, a, 1);
    } catch (const error& e) {
      if (e.code() == errc::precondition_violated) guard_seen = true;
    }
  }
  CHECK(guard_seen);
}
