#pragma once

#include <utility>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// Trial-division factorization (2-3-5 wheel) with a work budget. Throws
// LimitExceeded once the budget is spent and the cofactor is composite.
// Factors come back sorted ascending as (prime, multiplicity).
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// Deterministic Miller-Rabin below 2^64, mpz_probab_prime_p beyond.
bool is_prime(const Int& n);

Int euler_phi(const Int& n);

// Least n >= 1 with a^n = 1 (mod m). Convention: m = 1 gives 1.
Int multiplicative_order(const Int& a, const Int& m);

// Parameters of the order-lifting lemma: ord_{p^j}(q) = d for j <= m and
// ord_{p^{m+n}}(q) = p^n * d afterwards.
struct BloshchitsynParams {
  Int prime;
  Int base;
  unsigned m = 0;
  Int d;
};

BloshchitsynParams bloshchitsyn_params(const Int& p, const Int& q);

// c2 = 1 / (p1^m1 ... pk^mk): ord over any joint prime-power modulus is at
// least c2 times the modulus.
Rational order_lower_bound_constant(const std::vector<Int>& primes, const Int& q);

// Dense integer polynomial, coefficients ascending. Empty vector = zero.
struct IntPoly {
  std::vector<Int> coeffs;

  static IntPoly zero() { return {}; }
  static IntPoly monomial(std::size_t e, const Int& c = 1);

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  void normalize();

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs == b.coeffs; }

  // Quotient for known-exact division; throws if the division leaves a
  // remainder. Divisor must be monic for remainder_by_monic.
  IntPoly div_exact(const IntPoly& divisor) const;
  IntPoly remainder_by_monic(const IntPoly& divisor) const;
};

// n-th cyclotomic polynomial via the quotient recurrence on x^n - 1.
// Results are memoized behind a mutex.
IntPoly cyclotomic_poly(unsigned long n);

// Exact decision of sum_{e in exponents} exp(2 pi i e / n) == 0 via
// divisibility by the cyclotomic polynomial (after reducing exponents mod n
// and cancelling the common gcd with n). Empty sum counts as zero.
bool vanishing_root_sum(const std::vector<Int>& exponents, const Int& n);

}  // namespace cantor
