#include "cantor/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr unsigned long kTrialBudget = 1UL << 22;  // candidate divisors

Int powmod(const Int& a, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool miller_rabin_u64(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  unsigned long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto mulmod = [](unsigned long a, unsigned long b, unsigned long m) -> unsigned long {
    return static_cast<unsigned long>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powm = [&](unsigned long a, unsigned long e, unsigned long m) {
    unsigned long r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  // Deterministic witness set for the full 64-bit range.
  for (unsigned long a : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
    unsigned long x = powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return miller_rabin_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n < 1) throw InvalidInput("bad_arguments", "factorize expects n >= 1");
  std::vector<std::pair<Int, unsigned>> factors;
  Int m = n;
  auto strip = [&](const Int& p) {
    unsigned mult = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++mult;
    }
    if (mult) factors.emplace_back(p, mult);
  };
  strip(2);
  strip(3);
  strip(5);
  // 2-3-5 wheel.
  static const int kInc[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  Int cand = 7;
  unsigned long spent = 0;
  int w = 0;
  while (m > 1 && cand * cand <= m) {
    if (++spent > kTrialBudget) {
      if (is_prime(m)) break;
      throw LimitExceeded("factor_limit",
                          "trial-division budget exhausted on composite cofactor " + int_str(m));
    }
    strip(cand);
    cand += kInc[w];
    w = (w + 1) & 7;
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::sort(factors.begin(), factors.end());
  return factors;
}

Int euler_phi(const Int& n) {
  Int phi = 1;
  for (const auto& [p, e] : factorize(n)) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
    phi *= pe * (p - 1);
  }
  return phi;
}

Int multiplicative_order(const Int& a, const Int& m) {
  if (m < 1) throw InvalidInput("bad_arguments", "modulus must be >= 1");
  if (m == 1) return 1;
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1)
    throw InvalidInput("non_coprime", "gcd(" + int_str(a) + ", " + int_str(m) + ") != 1");

  // Start from phi(m) and strip each prime of phi(m) while a^(t/r) stays 1.
  // phi(m)'s factorization is assembled from the factors of m and of p - 1.
  std::map<Int, unsigned> phi_factors;
  Int phi = 1;
  for (const auto& [p, e] : factorize(m)) {
    if (e > 1) {
      phi_factors[p] += e - 1;
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
      phi *= pe;
    }
    for (const auto& [r, f] : factorize(p - 1)) phi_factors[r] += f;
    phi *= p - 1;
  }
  Int t = phi;
  for (const auto& [r, f] : phi_factors) {
    for (unsigned i = 0; i < f; ++i) {
      Int reduced = t / r;
      if (t % r != 0 || powmod(a, reduced, m) != 1) break;
      t = reduced;
    }
  }
  return t;
}

BloshchitsynParams bloshchitsyn_params(const Int& p, const Int& q) {
  if (!is_prime(p)) throw InvalidInput("bad_arguments", int_str(p) + " is not prime");
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw InvalidInput("non_coprime", "p must be coprime to q");

  BloshchitsynParams out;
  out.prime = p;
  out.base = q;
  out.d = multiplicative_order(q, p);
  if (p == 2 && q % 4 == 3) {
    // (Z/2^j)* is not cyclic for j >= 3, and for q = 3 (mod 4) the orders
    // run 1, 2, 2, ..., 2, 4, 8, ...: the level-1 value is exceptional and
    // the plateau of 2 ends at v_2(q^2 - 1). Past that the orders double
    // per level, which is the property everything downstream relies on.
    out.d = 2;
    Int q2 = q * q - 1;
    Int tmp;
    out.m = static_cast<unsigned>(mpz_remove(tmp.get_mpz_t(), q2.get_mpz_t(),
                                             Int(2).get_mpz_t()));
  } else {
    // m = largest j with q^d = 1 (mod p^j): probe successive prime powers.
    out.m = 1;
    Int pj = p * p;
    while (powmod(q, out.d, pj) == 1) {
      ++out.m;
      pj *= p;
    }
  }
  // One lifting step checked right away: ord at p^(m+1) must be exactly p*d.
  Int pm1;
  mpz_pow_ui(pm1.get_mpz_t(), p.get_mpz_t(), out.m + 1);
  Int lifted = multiplicative_order(q, pm1);
  if (lifted != p * out.d)
    throw Error("internal", "order lifting failed at " + int_str(pm1));
  return out;
}

Rational order_lower_bound_constant(const std::vector<Int>& primes, const Int& q) {
  if (primes.empty()) throw InvalidInput("bad_arguments", "need at least one prime");
  Int denom = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j])
        throw InvalidInput("bad_arguments", "primes must be distinct");
    BloshchitsynParams bp = bloshchitsyn_params(primes[i], q);
    Int pm;
    mpz_pow_ui(pm.get_mpz_t(), primes[i].get_mpz_t(), bp.m);
    denom *= pm;
  }
  return Rational(Int(1), denom);
}

IntPoly IntPoly::monomial(std::size_t e, const Int& c) {
  IntPoly p;
  if (c == 0) return p;
  p.coeffs.assign(e + 1, Int(0));
  p.coeffs[e] = c;
  return p;
}

void IntPoly::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly::zero();
  IntPoly out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  out.normalize();
  return out;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  IntPoly out = a;
  if (out.coeffs.size() < b.coeffs.size()) out.coeffs.resize(b.coeffs.size(), Int(0));
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  out.normalize();
  return out;
}

IntPoly IntPoly::div_exact(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw InvalidInput("bad_arguments", "division by zero polynomial");
  IntPoly rem = *this;
  if (rem.degree() < divisor.degree()) {
    if (rem.is_zero()) return IntPoly::zero();
    throw Error("internal", "polynomial division not exact");
  }
  IntPoly quot;
  quot.coeffs.assign(rem.coeffs.size() - divisor.coeffs.size() + 1, Int(0));
  const Int& lead = divisor.coeffs.back();
  for (int i = rem.degree(); i >= divisor.degree();) {
    Int c = rem.coeffs[i];
    if (c != 0) {
      if (!mpz_divisible_p(c.get_mpz_t(), lead.get_mpz_t()))
        throw Error("internal", "polynomial division not exact");
      Int f = c / lead;
      std::size_t shift = i - divisor.degree();
      quot.coeffs[shift] = f;
      for (std::size_t j = 0; j < divisor.coeffs.size(); ++j)
        rem.coeffs[shift + j] -= f * divisor.coeffs[j];
    }
    --i;
  }
  rem.normalize();
  if (!rem.is_zero()) throw Error("internal", "polynomial division not exact");
  quot.normalize();
  return quot;
}

IntPoly IntPoly::remainder_by_monic(const IntPoly& divisor) const {
  if (divisor.is_zero() || divisor.coeffs.back() != 1)
    throw InvalidInput("bad_arguments", "divisor must be monic");
  IntPoly rem = *this;
  for (int i = rem.degree(); i >= divisor.degree(); --i) {
    Int c = rem.coeffs[i];
    if (c == 0) continue;
    std::size_t shift = i - divisor.degree();
    for (std::size_t j = 0; j < divisor.coeffs.size(); ++j)
      rem.coeffs[shift + j] -= c * divisor.coeffs[j];
  }
  rem.normalize();
  return rem;
}

IntPoly cyclotomic_poly(unsigned long n) {
  if (n == 0) throw InvalidInput("bad_arguments", "cyclotomic index must be >= 1");
  static std::mutex mu;
  static std::map<unsigned long, IntPoly> cache;
  std::scoped_lock lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // Fill the cache bottom-up over the divisors of n.
  std::vector<unsigned long> divisors;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    divisors.push_back(d);
    if (d != n / d) divisors.push_back(n / d);
  }
  std::sort(divisors.begin(), divisors.end());
  for (unsigned long d : divisors) {
    if (cache.count(d)) continue;
    IntPoly xn_minus_1 = IntPoly::monomial(d) - IntPoly::monomial(0);
    IntPoly acc = IntPoly::monomial(0);  // product of proper-divisor cyclotomics
    for (unsigned long e : divisors) {
      if (e >= d || d % e) continue;
      acc = acc * cache.at(e);
    }
    cache[d] = xn_minus_1.div_exact(acc);
  }
  return cache.at(n);
}

bool vanishing_root_sum(const std::vector<Int>& exponents, const Int& n) {
  if (n < 1) throw InvalidInput("bad_arguments", "modulus must be >= 1");
  if (exponents.empty()) return true;

  // Reduce mod n, then divide out the common gcd with n: the sum over
  // exp(2 pi i g e'/n) equals the sum over exp(2 pi i e'/(n/g)).
  std::vector<Int> reduced;
  reduced.reserve(exponents.size());
  Int g = n;
  for (const Int& e : exponents) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
    reduced.push_back(r);
  }
  Int modulus = n / g;

  std::vector<Int> scaled;
  scaled.reserve(reduced.size());
  Int emax = 0;
  for (const Int& e : reduced) {
    scaled.push_back(e / g);
    if (scaled.back() > emax) emax = scaled.back();
  }
  Int phi = euler_phi(modulus);
  if (emax < phi) return false;  // deg P < deg Phi and P != 0

  if (!mpz_fits_ulong_p(modulus.get_mpz_t()) || modulus > (1L << 20))
    throw LimitExceeded("modulus_limit",
                        "reduced modulus too large for dense cyclotomic division");
  unsigned long m = modulus.get_ui();

  IntPoly p;
  p.coeffs.assign(emax.get_ui() + 1, Int(0));
  for (const Int& e : scaled) p.coeffs[e.get_ui()] += 1;
  p.normalize();
  return p.remainder_by_monic(cyclotomic_poly(m)).is_zero();
}

}  // namespace cantor
