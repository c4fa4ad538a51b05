#include "cantor/hadamard.hpp"

#include <algorithm>

#include "cantor/errors.hpp"
#include "cantor/number_theory.hpp"

namespace cantor {

HadamardTriple make_triple(Int modulus, std::vector<Int> b_digits, std::vector<Int> l_freqs) {
  if (modulus < 2) throw InvalidInput("invalid_triple", "modulus must be >= 2");
  if (b_digits.size() != l_freqs.size())
    throw InvalidInput("size_mismatch", "B and L must have equal cardinality");
  if (b_digits.size() < 2) throw InvalidInput("invalid_triple", "need #B = #L >= 2");
  std::sort(b_digits.begin(), b_digits.end());
  std::sort(l_freqs.begin(), l_freqs.end());
  for (std::size_t i = 1; i < b_digits.size(); ++i)
    if (b_digits[i] == b_digits[i - 1])
      throw InvalidInput("invalid_triple", "duplicate element in B");
  for (std::size_t i = 1; i < l_freqs.size(); ++i)
    if (l_freqs[i] == l_freqs[i - 1])
      throw InvalidInput("invalid_triple", "duplicate element in L");
  return {std::move(modulus), std::move(b_digits), std::move(l_freqs)};
}

HadamardCheck check_hadamard(const HadamardTriple& t) {
  HadamardCheck out;
  for (std::size_t i = 0; i < t.l_freqs.size(); ++i) {
    for (std::size_t j = i + 1; j < t.l_freqs.size(); ++j) {
      Int diff = t.l_freqs[j] - t.l_freqs[i];
      std::vector<Int> exps;
      exps.reserve(t.b_digits.size());
      for (const Int& b : t.b_digits) exps.push_back(b * diff);
      if (!vanishing_root_sum(exps, t.modulus)) {
        out.witness = {t.l_freqs[i], t.l_freqs[j]};
        return out;
      }
    }
  }
  out.valid = true;
  return out;
}

namespace {

void require_valid(const HadamardTriple& t, const char* op) {
  if (!check_hadamard(t).valid)
    throw InvalidInput("invalid_triple", std::string(op) + " requires a valid Hadamard triple");
}

}  // namespace

HadamardTriple translate_triple(const HadamardTriple& t, const Int& b0, const Int& l0) {
  require_valid(t, "translate_triple");
  std::vector<Int> b = t.b_digits, l = t.l_freqs;
  for (Int& x : b) x += b0;
  for (Int& x : l) x += l0;
  HadamardTriple out = make_triple(t.modulus, std::move(b), std::move(l));
  if (!check_hadamard(out).valid)
    throw Error("internal", "translated triple failed the exact check");
  return out;
}

HadamardTriple scale_spectrum_digits(const HadamardTriple& t, const Int& p) {
  if (p < 2) throw InvalidInput("bad_arguments", "scaling factor must be >= 2");
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), t.modulus.get_mpz_t());
  if (g != 1) throw InvalidInput("non_coprime", "gcd(p, N) must be 1");
  require_valid(t, "scale_spectrum_digits");
  std::vector<Int> l = t.l_freqs;
  for (Int& x : l) x *= p;
  HadamardTriple out = make_triple(t.modulus, t.b_digits, std::move(l));
  if (!check_hadamard(out).valid)
    throw Error("internal", "scaled triple failed the exact check");
  return out;
}

}  // namespace cantor
