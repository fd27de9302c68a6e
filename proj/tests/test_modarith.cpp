#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "sigcalc/modarith.hpp"
#include "sigcalc/rng.hpp"

using namespace sigcalc;

namespace {

// Oracle: exponentiation by repeated multiplication.
Int pow_by_mult(const Int& base, unsigned e, const Int& m) {
  Int r = mod_floor(1, m);
  for (unsigned i = 0; i < e; ++i) r = r * base % m;
  return r;
}

// Oracle: the set of nonzero squares modulo an odd prime.
std::set<Int> squares_mod(const Int& ell) {
  std::set<Int> s;
  for (Int x = 1; x < ell; ++x) s.insert(x * x % ell);
  return s;
}

// Oracle: all square roots of a modulo m by full scan.
std::vector<Int> roots_by_scan(const Int& a, const Int& m) {
  std::vector<Int> out;
  for (Int r = 0; r < m; ++r)
    if (mod_floor(r * r - a, m) == 0) out.push_back(r);
  return out;
}

}  // namespace

TEST_CASE("mod_pow") {
  CHECK(mod_pow(Residue(2, 13), 6).v == 12);
  CHECK(mod_pow(Residue(2, 13), 6).v == pow_by_mult(2, 6, 13));
  CHECK(mod_pow(Residue(5, 7), 0) == Residue(1, 7));
  CHECK(mod_pow(Residue(3, 9), 2).v == 0);

  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Int m = rng.between(2, 1000);
    Int b = rng.below(m);
    unsigned e = static_cast<unsigned>(rng.below_u64(40));
    CHECK(mod_pow(Residue(b, m), e).v == pow_by_mult(b, e, m));
  }
}

TEST_CASE("mod_inv") {
  CHECK(mod_inv(Residue(3, 7)).v == 5);
  CHECK(mod_inv(Residue(1, 100)).v == 1);
  CHECK_THROWS_AS(mod_inv(Residue(6, 9)), error);
  try {
    mod_inv(Residue(6, 9));
  } catch (const error& e) {
    CHECK(e.code() == errc::not_invertible);
  }

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Int m = rng.between(2, 5000);
    Int a = rng.below(m);
    if (gcd(a, m) != 1) continue;
    Residue r(a, m);
    CHECK((r * mod_inv(r)).v == 1);
  }
}

TEST_CASE("residue arithmetic basics") {
  Residue a(5, 7), b(4, 7);
  CHECK((a + b).v == 2);
  CHECK((a - b).v == 1);
  CHECK((a * b).v == 6);
  CHECK_THROWS_AS(a + Residue(1, 11), error);
  CHECK(Residue(-3, 7).v == 4);
  CHECK_THROWS_AS(Residue(0, 1), error);
}

TEST_CASE("legendre symbol") {
  // enumeration oracle: squares mod 7 are {1, 2, 4}
  std::set<Int> sq7 = squares_mod(7);
  CHECK(sq7 == std::set<Int>{1, 2, 4});
  for (Int a = 0; a < 7; ++a) {
    int expect = a == 0 ? 0 : (sq7.count(a) ? 1 : -1);
    CHECK(legendre(a, 7) == expect);
  }
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(legendre(14, 7) == 0);
  CHECK(legendre(-1, 5) == 1);
  CHECK(legendre(-1, 7) == -1);

  SECTION("multiplicativity on units") {
    Rng rng(3);
    for (Int ell : {Int(11), Int(13), Int(31), Int(97)}) {
      for (int i = 0; i < 60; ++i) {
        Int a = rng.between(1, ell - 1);
        Int b = rng.between(1, ell - 1);
        CHECK(legendre(a * b, ell) == legendre(a, ell) * legendre(b, ell));
      }
    }
  }
}

TEST_CASE("sqrt_mod_prime") {
  CHECK(sqrt_mod_prime(Residue(2, 7)).v == 3);
  CHECK(sqrt_mod_prime(Residue(4, 7)).v == 2);
  CHECK_THROWS_AS(sqrt_mod_prime(Residue(3, 7)), error);
  try {
    sqrt_mod_prime(Residue(3, 7));
  } catch (const error& e) {
    CHECK(e.code() == errc::non_residue);
  }
  try {
    sqrt_mod_prime(Residue(0, 7));
  } catch (const error& e) {
    CHECK(e.code() == errc::zero_input);
  }

  SECTION("exhaustive for small primes") {
    for (Int ell : {Int(3), Int(5), Int(7), Int(11), Int(13)}) {
      for (const Int& a : squares_mod(ell)) {
        Residue r = sqrt_mod_prime(Residue(a, ell));
        CHECK(r.v * r.v % ell == a);
        CHECK(r.v <= ell - r.v);  // smaller representative
      }
    }
  }

  SECTION("Tonelli-Shanks path on larger primes") {
    // both 1 mod 4 (general loop) and 3 mod 4 (exponent shortcut)
    Rng rng(19);
    for (Int ell : {Int(104729), Int(1000003), Int(2147483647)}) {
      for (int i = 0; i < 20; ++i) {
        Int x = rng.between(1, ell - 1);
        Int a = x * x % ell;
        Residue r = sqrt_mod_prime(Residue(a, ell));
        CHECK(r.v * r.v % ell == a);
        CHECK(r.v <= ell - r.v);
      }
    }
  }
}

TEST_CASE("hensel_sqrt_lift") {
  SECTION("frozen example a=2, l=7") {
    // scan oracle: roots of 2 mod 49 are 10 and 39; 10 = 3 mod 7
    std::vector<Int> roots = roots_by_scan(2, 49);
    REQUIRE(roots == std::vector<Int>{10, 39});
    Residue lifted = hensel_sqrt_lift(2, Residue(3, 7));
    CHECK(lifted == Residue(10, 49));
  }
  CHECK(hensel_sqrt_lift(4, Residue(2, 7)) == Residue(2, 49));
  try {
    hensel_sqrt_lift(2, Residue(0, 7));
    FAIL("expected SingularLift");
  } catch (const error& e) {
    CHECK(e.code() == errc::singular_lift);
  }
  try {
    hensel_sqrt_lift(3, Residue(3, 7));  // 3^2 = 2 != 3 mod 7
    FAIL("expected PreconditionViolated");
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition_violated);
  }

  SECTION("squares back mod l^2, exhaustively for l <= 13") {
    for (Int ell : {Int(3), Int(5), Int(7), Int(11), Int(13)}) {
      Int m2 = ell * ell;
      for (Int a = 1; a < m2; ++a) {
        if (legendre(a, ell) != 1) continue;
        Residue base = sqrt_mod_prime(Residue(a, ell));
        Residue r = hensel_sqrt_lift(a, base);
        CHECK(mod_floor(r.v * r.v - a, m2) == 0);
        CHECK(mod_floor(r.v, ell) == base.v);
      }
    }
  }
}

TEST_CASE("teichmuller_decompose") {
  SECTION("frozen examples, l = 5") {
    TeichmullerParts t1 = teichmuller_decompose(Residue(6, 25));
    CHECK(t1.xi.v == 1);
    CHECK(t1.y.v == 1);
    TeichmullerParts t2 = teichmuller_decompose(Residue(7, 25));
    CHECK(t2.xi.v == 7);
    CHECK(t2.y.v == 0);
    TeichmullerParts t3 = teichmuller_decompose(Residue(1, 25));
    CHECK(t3.xi.v == 1);
    CHECK(t3.y.v == 0);
  }

  try {
    teichmuller_decompose(Residue(5, 25));
    FAIL("expected NotUnit");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_unit);
  }
  CHECK_THROWS_AS(teichmuller_decompose(Residue(3, 10)), error);

  SECTION("recomposition and group structure, exhaustive for l = 7") {
    Int ell = 7, m2 = 49;
    std::vector<Residue> units;
    for (Int w = 1; w < m2; ++w)
      if (gcd(w, ell) == 1) units.push_back(Residue(w, m2));

    Residue one_plus_l(1 + ell, m2);
    for (const Residue& w : units) {
      TeichmullerParts t = teichmuller_decompose(w);
      CHECK(t.xi.pow(ell - 1).v == 1);
      CHECK(t.xi * one_plus_l.pow(t.y.v) == w);  // exact recomposition
    }
    // the map w -> (xi, y) is a homomorphism
    for (std::size_t i = 0; i < units.size(); i += 5) {
      for (std::size_t j = 0; j < units.size(); j += 7) {
        TeichmullerParts ti = teichmuller_decompose(units[i]);
        TeichmullerParts tj = teichmuller_decompose(units[j]);
        TeichmullerParts tp = teichmuller_decompose(units[i] * units[j]);
        CHECK(tp.xi == ti.xi * tj.xi);
        CHECK(tp.y == ti.y + tj.y);
      }
    }
  }
}
