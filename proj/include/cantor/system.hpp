#pragma once

#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// A self-similar system x -> (x + a)/q for a in a finite rational digit set.
// The attractor K(q, digits) lives inside [hull_lo, hull_hi].
struct CantorSystem {
  long base = 0;                  // q
  std::vector<Rational> digits;   // ascending, pairwise distinct
  Int scale;                      // least N >= 1 with N*a integral for every digit
  Rational hull_lo, hull_hi;      // min(digits)/(q-1), max(digits)/(q-1)

  Rational diameter() const { return hull_hi - hull_lo; }
  bool in_hull(const Rational& x) const { return hull_lo <= x && x <= hull_hi; }
};

// Public constructor: q >= 3, at least two distinct digits.
CantorSystem make_system(long q, std::vector<Rational> digits);

// Same normalization with q = 2 admitted (K is then an interval). Needed for
// the dual systems K(N, L) of Hadamard triples, whose modulus may be 2.
CantorSystem make_system_allow_interval(long q, std::vector<Rational> digits);

// Digit set r^{-1}A - r^{-1}*alpha*(q-1), so that
// K(q, new digits) = r^{-1} (K(q, A) - alpha).
CantorSystem affine_digit_transform(const CantorSystem& sys, const Rational& r,
                                    const Rational& alpha);

// Denominator level p1^n1 ... pk^nk of the finite-expansion set D_p.
struct DpLevel {
  std::vector<Int> primes;           // pairwise distinct
  std::vector<unsigned> exponents;   // same length as primes
  Int modulus() const;
};

// Level n of D_p: exponents are n times the multiplicity of each prime of p.
DpLevel dp_level_for(long p, unsigned n);

}  // namespace cantor
