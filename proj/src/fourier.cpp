#include "cantor/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "cantor/errors.hpp"
#include "cantor/number_theory.hpp"

namespace cantor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac_to_double(const Rational& x) {
  Rational f = x - Rational(x.floor());
  return f.to_double();
}

}  // namespace

std::complex<double> mb_eval(const std::vector<Int>& b_digits, const Rational& x) {
  if (b_digits.empty()) throw InvalidInput("bad_arguments", "B must be nonempty");
  std::complex<double> sum = 0;
  for (const Int& b : b_digits) {
    double angle = kTwoPi * frac_to_double(Rational(b) * x);
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum / static_cast<double>(b_digits.size());
}

std::complex<double> mb_eval(const std::vector<Int>& b_digits, double x) {
  if (b_digits.empty()) throw InvalidInput("bad_arguments", "B must be nonempty");
  std::complex<double> sum = 0;
  for (const Int& b : b_digits) {
    double angle = kTwoPi * std::fmod(b.get_d() * x, 1.0);
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum / static_cast<double>(b_digits.size());
}

MuHatValue mu_hat(const Int& modulus, const std::vector<Int>& b_digits, const Rational& xi,
                  int depth) {
  if (depth < 1) throw InvalidInput("bad_arguments", "depth must be >= 1");
  if (modulus < 2) throw InvalidInput("bad_arguments", "modulus must be >= 2");
  MuHatValue out;
  out.value = 1;
  Rational scale = xi;
  Rational n_rat(modulus);
  for (int k = 1; k <= depth; ++k) {
    scale = scale / n_rat;
    out.value *= mb_eval(b_digits, scale);
  }
  double mean_abs_b = 0;
  for (const Int& b : b_digits) mean_abs_b += std::abs(b.get_d());
  mean_abs_b /= static_cast<double>(b_digits.size());
  double n = modulus.get_d();
  out.tail_bound =
      kTwoPi * mean_abs_b * std::abs(xi.to_double()) / (std::pow(n, depth) * (n - 1.0));
  return out;
}

namespace {

struct ModulusFactors {
  std::vector<Int> primes;
  std::vector<unsigned> mults;  // valuation of N at each prime
};

// Does some factor m_B(m / N^k) vanish? Exact, m > 0.
bool difference_has_vanishing_factor(const Int& m, const Int& modulus,
                                     const ModulusFactors& nf, const std::vector<Int>& b_shifted,
                                     const Int& max_b) {
  // Valuations of m at the primes of N; gcd(m, N^k) follows arithmetically.
  std::vector<unsigned long> val_m(nf.primes.size());
  for (std::size_t i = 0; i < nf.primes.size(); ++i) {
    Int tmp;
    val_m[i] = mpz_remove(tmp.get_mpz_t(), m.get_mpz_t(), nf.primes[i].get_mpz_t());
  }
  Int cutoff = 4 * max_b * m;
  Int nk = 1;
  for (unsigned long k = 1;; ++k) {
    nk *= modulus;
    if (nk > cutoff) return false;  // all remaining phase angles stay below pi/2
    // M' = N^k / gcd(m, N^k) and its totient, from the known factorization.
    Int reduced = 1, phi = 1;
    for (std::size_t i = 0; i < nf.primes.size(); ++i) {
      unsigned long e = k * nf.mults[i] - std::min<unsigned long>(val_m[i], k * nf.mults[i]);
      if (e == 0) continue;
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), nf.primes[i].get_mpz_t(), e);
      reduced *= pe;
      phi *= pe / nf.primes[i] * (nf.primes[i] - 1);
    }
    if (reduced == 1) continue;  // sum of #B equal phases, never zero
    if (phi > max_b) continue;   // deg P < deg Phi, cannot vanish
    if (vanishing_root_sum(b_shifted, reduced)) return true;
  }
}

}  // namespace

GramResult gram_offdiag_exact(const std::vector<Int>& spectrum, const Int& modulus,
                              const std::vector<Int>& b_digits) {
  if (modulus < 2) throw InvalidInput("bad_arguments", "modulus must be >= 2");
  if (b_digits.size() < 2) throw InvalidInput("bad_arguments", "need #B >= 2");

  std::vector<Int> lambda = spectrum;
  std::sort(lambda.begin(), lambda.end());

  // Shift B to start at 0: a unit phase factor that leaves |m_B| unchanged.
  std::vector<Int> b_shifted;
  Int b_min = *std::min_element(b_digits.begin(), b_digits.end());
  Int max_b = 0;
  for (const Int& b : b_digits) {
    b_shifted.push_back(b - b_min);
    if (b_shifted.back() > max_b) max_b = b_shifted.back();
  }

  ModulusFactors nf;
  for (const auto& [p, e] : factorize(modulus)) {
    nf.primes.push_back(p);
    nf.mults.push_back(e);
  }

  GramResult out;
  std::unordered_map<Int, bool, IntHash> cache;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      Int m = lambda[j] - lambda[i];
      if (m == 0) {
        out.witness = {lambda[i], lambda[j]};
        return out;
      }
      auto [it, inserted] = cache.try_emplace(m, false);
      if (inserted)
        it->second = difference_has_vanishing_factor(m, modulus, nf, b_shifted, max_b);
      if (!it->second) {
        out.witness = {lambda[i], lambda[j]};
        return out;
      }
    }
  }
  out.orthogonal = true;
  return out;
}

ParsevalReport parseval_check(const Int& modulus, const std::vector<Int>& b_digits,
                              const std::vector<Int>& spectrum_cut,
                              const std::vector<double>& xi_grid, int product_depth) {
  if (product_depth < 1) throw InvalidInput("bad_arguments", "product depth must be >= 1");
  if (modulus < 2) throw InvalidInput("bad_arguments", "modulus must be >= 2");
  if (b_digits.empty()) throw InvalidInput("bad_arguments", "B must be nonempty");
  if (xi_grid.empty()) throw InvalidInput("bad_arguments", "xi grid must be nonempty");

  ParsevalReport rep;
  rep.xi_grid = xi_grid;
  rep.product_depth = product_depth;
  rep.spectrum_size = spectrum_cut.size();
  rep.q_values.assign(xi_grid.size(), 0.0);

  std::vector<Int> lambda = spectrum_cut;
  std::sort(lambda.begin(), lambda.end());

  // |m_B(x)|^2 = (#B + 2 sum_{pairs} cos(2 pi (b - b') x)) / #B^2: only the
  // pairwise differences enter, so phases can be reduced per difference.
  std::vector<Int> deltas;
  for (std::size_t i = 0; i < b_digits.size(); ++i)
    for (std::size_t j = i + 1; j < b_digits.size(); ++j)
      deltas.push_back(abs(b_digits[j] - b_digits[i]));
  const double nb = static_cast<double>(b_digits.size());
  const double inv_nb2 = 1.0 / (nb * nb);

  std::vector<Int> nk_pow(product_depth + 1);
  nk_pow[0] = 1;
  for (int k = 1; k <= product_depth; ++k) nk_pow[k] = nk_pow[k - 1] * modulus;
  std::vector<double> nk_double(product_depth + 1);
  for (int k = 0; k <= product_depth; ++k) nk_double[k] = nk_pow[k].get_d();

  // Per spectrum point: exact residues (delta * lambda mod N^k) once, then a
  // cheap cosine product per grid point. Summation order is fixed by the
  // sorted spectrum, so reports are reproducible.
  std::vector<double> res(static_cast<std::size_t>(product_depth) * deltas.size());
  for (const Int& lam : lambda) {
    for (int k = 1; k <= product_depth; ++k) {
      for (std::size_t di = 0; di < deltas.size(); ++di) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), Int(deltas[di] * lam).get_mpz_t(), nk_pow[k].get_mpz_t());
        res[(k - 1) * deltas.size() + di] = r.get_d() / nk_double[k];
      }
    }
    for (std::size_t gi = 0; gi < xi_grid.size(); ++gi) {
      double prod = 1.0;
      for (int k = 1; k <= product_depth; ++k) {
        double s = nb;
        for (std::size_t di = 0; di < deltas.size(); ++di) {
          double phase = res[(k - 1) * deltas.size() + di] +
                         deltas[di].get_d() * xi_grid[gi] / nk_double[k];
          s += 2.0 * std::cos(kTwoPi * phase);
        }
        // Rounding can push an exactly-vanishing factor a hair negative.
        prod *= std::max(s, 0.0) * inv_nb2;
        if (prod < 1e-28) {  // below reporting precision, and factors are <= 1
          prod = 0.0;
          break;
        }
      }
      rep.q_values[gi] += prod;
    }
  }

  for (double q : rep.q_values) rep.max_deviation = std::max(rep.max_deviation, std::abs(q - 1.0));

  double mean_abs_b = 0;
  for (const Int& b : b_digits) mean_abs_b += std::abs(b.get_d());
  mean_abs_b /= nb;
  double x_max = 0;
  for (double xi : xi_grid) x_max = std::max(x_max, std::abs(xi));
  double lam_max = 0;
  if (!lambda.empty())
    lam_max = std::max(std::abs(lambda.front().get_d()), std::abs(lambda.back().get_d()));
  double n = modulus.get_d();
  double delta = kTwoPi * mean_abs_b * (x_max + lam_max) /
                 (std::pow(n, product_depth) * (n - 1.0));
  rep.eps_trunc = delta >= 0.5 ? 1e9 : 1.0 / ((1.0 - delta) * (1.0 - delta)) - 1.0;
  return rep;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1) throw InvalidInput("bad_arguments", "need at least one grid point");
  std::vector<double> grid;
  grid.reserve(points);
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < points; ++i)
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
  return grid;
}

}  // namespace cantor
