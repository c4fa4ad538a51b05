#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/number_theory.hpp"
#include "oracles.hpp"

using cantor::Int;
using cantor::IntPoly;
using cantor::Rational;

TEST_CASE("multiplicative order basics") {
  CHECK(cantor::multiplicative_order(Int(2), Int(7)) == 3);
  CHECK(cantor::multiplicative_order(Int(3), Int(5)) == 4);
  CHECK(cantor::multiplicative_order(Int(3), Int(1)) == 1);  // ord_1 convention
  CHECK(cantor::multiplicative_order(Int(10), Int(487)) == 486);
  CHECK_THROWS_AS(cantor::multiplicative_order(Int(6), Int(9)), cantor::InvalidInput);
}

TEST_CASE("a^n = 1 mod m exactly when the order divides n") {
  cantor::testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Int m(rng.range(2, 4000));
    Int a(rng.range(2, 4000));
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) continue;
    Int ord = cantor::multiplicative_order(a, m);
    Int n(rng.range(1, 500));
    Int an;
    mpz_powm(an.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    CHECK((an == 1) == (n % ord == 0));
  }
}

TEST_CASE("factorize round-trips and sorts") {
  auto f = cantor::factorize(Int(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Int, unsigned>{Int(2), 3u});
  CHECK(f[1] == std::pair<Int, unsigned>{Int(3), 2u});
  CHECK(f[2] == std::pair<Int, unsigned>{Int(5), 1u});
  CHECK(cantor::factorize(Int(1)).empty());
  CHECK(cantor::factorize(Int("10000000019")).size() == 1);  // prime
}

TEST_CASE("primality is deterministic in the 64-bit range") {
  CHECK(cantor::is_prime(Int(2)));
  CHECK(cantor::is_prime(Int(199)));
  CHECK_FALSE(cantor::is_prime(Int(1)));
  CHECK_FALSE(cantor::is_prime(Int(3215031751L)));  // strong pseudoprime to 2,3,5,7
  CHECK(cantor::is_prime(Int("18446744073709551557")));
}

TEST_CASE("order lifting parameters") {
  auto bp = cantor::bloshchitsyn_params(Int(5), Int(3));
  CHECK(bp.m == 1);
  CHECK(bp.d == 4);

  bp = cantor::bloshchitsyn_params(Int(11), Int(3));
  CHECK(bp.m == 2);
  CHECK(bp.d == 5);

  bp = cantor::bloshchitsyn_params(Int(7), Int(2));
  CHECK(bp.m == 1);
  CHECK(bp.d == 3);

  CHECK_THROWS_AS(cantor::bloshchitsyn_params(Int(6), Int(5)), cantor::InvalidInput);
  CHECK_THROWS_AS(cantor::bloshchitsyn_params(Int(5), Int(10)), cantor::InvalidInput);
}

TEST_CASE("order lifting at p = 2 accounts for the non-cyclic 2-power groups") {
  // q = 3 (mod 4): orders run 1, 2, ..., 2, 4, 8, ... with the plateau of 2
  // ending at v_2(q^2 - 1); the naive single-plateau model breaks here.
  auto bp = cantor::bloshchitsyn_params(Int(2), Int(3));
  CHECK(bp.m == 3);  // v_2(8)
  CHECK(bp.d == 2);
  CHECK(cantor::multiplicative_order(Int(3), Int(8)) == 2);   // still on the plateau
  CHECK(cantor::multiplicative_order(Int(3), Int(16)) == 4);  // doubling starts

  bp = cantor::bloshchitsyn_params(Int(2), Int(7));
  CHECK(bp.m == 4);  // v_2(48)
  CHECK(bp.d == 2);

  // q = 1 (mod 4) keeps the plain plateau shape
  bp = cantor::bloshchitsyn_params(Int(2), Int(5));
  CHECK(bp.m == 2);  // v_2(4)
  CHECK(bp.d == 1);

  // the order lower bound stays valid with a factor 2 in the set
  cantor::Rational c2 = cantor::order_lower_bound_constant({Int(2)}, Int(3));
  CHECK(c2 == cantor::Rational(Int(1), Int(8)));
  cantor::Int modulus = 2;
  for (int n = 2; n <= 14; ++n) {
    modulus *= 2;
    cantor::Int ord = cantor::multiplicative_order(Int(3), modulus);
    CHECK(cantor::Rational(ord) >= c2 * cantor::Rational(modulus));
  }
}

TEST_CASE("orders grow by a factor p per level past m") {
  for (auto [p, q] : {std::pair<long, long>{5, 3}, {11, 3}, {7, 2}, {3, 8}, {2, 3}, {2, 5}}) {
    auto bp = cantor::bloshchitsyn_params(Int(p), Int(q));
    Int pj;
    mpz_pow_ui(pj.get_mpz_t(), Int(p).get_mpz_t(), bp.m);
    Int expected = bp.d;
    for (unsigned n = 1; n <= 3; ++n) {
      pj *= p;
      expected *= p;
      CHECK(cantor::multiplicative_order(Int(q), pj) == expected);
    }
  }
}

TEST_CASE("order lower-bound constants") {
  CHECK(cantor::order_lower_bound_constant({Int(5)}, Int(3)) == Rational(Int(1), Int(5)));
  CHECK(cantor::order_lower_bound_constant({Int(11)}, Int(3)) == Rational(Int(1), Int(121)));
  CHECK(cantor::order_lower_bound_constant({Int(5), Int(11)}, Int(3)) ==
        Rational(Int(1), Int(605)));
  CHECK_THROWS_AS(cantor::order_lower_bound_constant({Int(5), Int(5)}, Int(3)),
                  cantor::InvalidInput);
}

TEST_CASE("ord(q, prod p^n) >= c2 prod p^n on random tuples") {
  cantor::testing::Rng rng(77);
  std::vector<Int> primes{Int(5), Int(11)};
  Rational c2 = cantor::order_lower_bound_constant(primes, Int(3));
  for (int i = 0; i < 120; ++i) {
    Int modulus = 1;
    bool zero = true;
    for (const Int& p : primes) {
      long e = rng.below(4);
      if (e > 0) zero = false;
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      modulus *= pe;
    }
    if (zero) continue;
    Int ord = cantor::multiplicative_order(Int(3), modulus);
    CHECK(Rational(ord) >= c2 * Rational(modulus));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cantor::cyclotomic_poly(1).coeffs == std::vector<Int>{Int(-1), Int(1)});
  CHECK(cantor::cyclotomic_poly(4).coeffs == std::vector<Int>{Int(1), Int(0), Int(1)});
  CHECK(cantor::cyclotomic_poly(6).coeffs == std::vector<Int>{Int(1), Int(-1), Int(1)});
  for (unsigned long n = 2; n <= 60; ++n) {
    IntPoly phi = cantor::cyclotomic_poly(n);
    CHECK(Int(phi.degree()) == cantor::euler_phi(Int(n)));
    CHECK(phi.coeffs.front() == 1);  // Phi_n(0) = 1 for n >= 2
  }
}

TEST_CASE("vanishing root sums, exact") {
  CHECK(cantor::vanishing_root_sum({Int(0), Int(2)}, Int(4)));
  CHECK_FALSE(cantor::vanishing_root_sum({Int(0), Int(1)}, Int(4)));
  CHECK(cantor::vanishing_root_sum({}, Int(5)));
  CHECK(cantor::vanishing_root_sum({Int(0), Int(1), Int(2)}, Int(3)));
  CHECK(cantor::vanishing_root_sum({Int(0), Int(5)}, Int(10)));       // 1 + zeta^5 = 0
  CHECK_FALSE(cantor::vanishing_root_sum({Int(0), Int(0)}, Int(8)));  // 2 != 0
  // exponents enter as a multiset: two full hexagons
  CHECK(cantor::vanishing_root_sum({Int(0), Int(0), Int(1), Int(1), Int(2), Int(2)}, Int(3)));
}

TEST_CASE("fast path matches the naive dense division") {
  cantor::testing::Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    unsigned long n = 1 + rng.below(48);
    std::vector<Int> exps;
    int count = 1 + rng.below(8);
    for (int j = 0; j < count; ++j) exps.push_back(Int(rng.range(0, 200)));
    CHECK(cantor::vanishing_root_sum(exps, Int(n)) == cantor::testing::naive_vanishing(exps, n));
  }
}

TEST_CASE("exact vanishing agrees with floating evaluation up to N = 200") {
  cantor::testing::Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    unsigned long n = 2 + rng.below(199);
    std::vector<Int> exps;
    int count = 2 + rng.below(7);
    for (int j = 0; j < count; ++j) exps.push_back(Int(rng.below(static_cast<long>(n))));
    double mag = cantor::testing::float_root_sum(exps, n);
    if (cantor::vanishing_root_sum(exps, Int(n))) {
      CHECK(mag < 1e-9);
    } else {
      CHECK(mag > 1e-6);
    }
  }
}
