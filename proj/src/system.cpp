#include "cantor/system.hpp"

#include <algorithm>

#include "cantor/errors.hpp"
#include "cantor/number_theory.hpp"

namespace cantor {

namespace {

CantorSystem build(long q, std::vector<Rational> digits, long min_base) {
  if (q < min_base)
    throw InvalidInput("bad_system", "base must be >= " + std::to_string(min_base));
  if (digits.size() < 2) throw InvalidInput("bad_system", "need at least two digits");
  std::sort(digits.begin(), digits.end());
  for (std::size_t i = 1; i < digits.size(); ++i)
    if (digits[i] == digits[i - 1])
      throw InvalidInput("bad_system", "duplicate digit " + digits[i].str());

  CantorSystem sys;
  sys.base = q;
  sys.scale = 1;
  for (const Rational& a : digits) {
    Int l;
    mpz_lcm(l.get_mpz_t(), sys.scale.get_mpz_t(), a.den().get_mpz_t());
    sys.scale = l;
  }
  Rational qm1(q - 1);
  sys.hull_lo = digits.front() / qm1;
  sys.hull_hi = digits.back() / qm1;
  sys.digits = std::move(digits);
  return sys;
}

}  // namespace

CantorSystem make_system(long q, std::vector<Rational> digits) {
  return build(q, std::move(digits), 3);
}

CantorSystem make_system_allow_interval(long q, std::vector<Rational> digits) {
  return build(q, std::move(digits), 2);
}

CantorSystem affine_digit_transform(const CantorSystem& sys, const Rational& r,
                                    const Rational& alpha) {
  if (r.is_zero()) throw InvalidInput("bad_system", "affine scale r must be nonzero");
  Rational shift = alpha * Rational(sys.base - 1);
  std::vector<Rational> digits;
  digits.reserve(sys.digits.size());
  for (const Rational& a : sys.digits) digits.push_back((a - shift) / r);
  return build(sys.base, std::move(digits), 2);
}

Int DpLevel::modulus() const {
  Int m = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), primes[i].get_mpz_t(), exponents[i]);
    m *= pe;
  }
  return m;
}

DpLevel dp_level_for(long p, unsigned n) {
  if (p < 2) throw InvalidInput("bad_arguments", "p must be >= 2");
  DpLevel level;
  for (const auto& [prime, mult] : factorize(Int(p))) {
    level.primes.push_back(prime);
    level.exponents.push_back(mult * n);
  }
  return level;
}

}  // namespace cantor
