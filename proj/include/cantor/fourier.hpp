#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// m_B(x) = (1/#B) sum_b exp(2 pi i b x). For rational x the phases are
// reduced mod 1 exactly before any floating evaluation.
std::complex<double> mb_eval(const std::vector<Int>& b_digits, const Rational& x);
std::complex<double> mb_eval(const std::vector<Int>& b_digits, double x);

struct MuHatValue {
  std::complex<double> value;
  // Sum over the omitted factors of the bound |m_B(xi/N^k) - 1| <=
  // 2 pi mean|b| |xi| / N^k; the true transform differs from the truncated
  // product by at most this much in modulus ratio.
  double tail_bound = 0;
};

// Truncated product prod_{k=1..depth} m_B(xi / N^k).
MuHatValue mu_hat(const Int& modulus, const std::vector<Int>& b_digits, const Rational& xi,
                  int depth);

struct GramResult {
  bool orthogonal = false;
  std::optional<std::pair<Int, Int>> witness;  // first pair with no vanishing factor
};

// Exact pairwise orthogonality of {e_lambda} in L^2(mu_{N,B}): for every
// pair difference m some factor m_B(m/N^k) must vanish. Each factor test is
// a vanishing root-of-unity sum; the modulus N^k is first reduced by the
// Galois substitution zeta -> zeta^{m'} to N^k/gcd(m, N^k), which keeps the
// polynomial degrees at max(B) regardless of k. Factors with all phase
// angles below pi/2 (N^k > 4 max(B) |m|) cannot vanish, which caps k.
GramResult gram_offdiag_exact(const std::vector<Int>& spectrum, const Int& modulus,
                              const std::vector<Int>& b_digits);

struct ParsevalReport {
  std::vector<double> xi_grid;
  std::vector<double> q_values;  // Q(xi) = sum_lambda |mu_hat(xi + lambda)|^2
  double max_deviation = 0;      // max |Q - 1|
  double eps_trunc = 0;          // allowance from product truncation
  int product_depth = 0;
  std::size_t spectrum_size = 0;
};

ParsevalReport parseval_check(const Int& modulus, const std::vector<Int>& b_digits,
                              const std::vector<Int>& spectrum_cut,
                              const std::vector<double>& xi_grid, int product_depth);

std::vector<double> uniform_grid(double lo, double hi, int points);

}  // namespace cantor
