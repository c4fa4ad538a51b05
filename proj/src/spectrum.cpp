#include "cantor/spectrum.hpp"

#include <algorithm>
#include <set>

#include "cantor/errors.hpp"
#include "cantor/orbit.hpp"

namespace cantor {

namespace {

void require_normalized(const HadamardTriple& t, const char* op) {
  if (t.b_digits.front() != 0 || t.l_freqs.front() != 0)
    throw InvalidInput("invalid_triple",
                       std::string(op) + " requires a normalized triple (0 in B and L)");
}

// Members of K(N, L) on the lattice Z/denominator inside the hull.
std::vector<Rational> lattice_members(const CantorSystem& dual, const Int& denominator) {
  Int k_lo = (dual.hull_lo * Rational(denominator)).ceil();
  Int k_hi = (dual.hull_hi * Rational(denominator)).floor();
  if (k_hi - k_lo > (1L << 22))
    throw LimitExceeded("grid_limit", "lattice scan too large");
  std::vector<Rational> members;
  for (Int k = k_lo; k <= k_hi; ++k) {
    Rational x(k, denominator);
    if (is_member(dual, x).member) members.push_back(x);
  }
  return members;
}

std::vector<Rational> scaled_sorted(const std::vector<Rational>& xs, const Rational& factor) {
  std::vector<Rational> out;
  out.reserve(xs.size());
  for (const Rational& x : xs) out.push_back(x * factor);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HadamardTriple normalize_triple(const HadamardTriple& t) {
  return translate_triple(t, -t.b_digits.front(), -t.l_freqs.front());
}

Int digit_gcd(const HadamardTriple& t) {
  Int d = 0;
  for (const Int& b : t.b_digits) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t());
  if (d == 0) throw InvalidInput("invalid_triple", "B must contain a nonzero element");
  return d;
}

CantorSystem dual_system(const HadamardTriple& t) {
  if (!mpz_fits_slong_p(t.modulus.get_mpz_t()))
    throw LimitExceeded("grid_limit", "modulus too large");
  std::vector<Rational> digits;
  digits.reserve(t.l_freqs.size());
  for (const Int& l : t.l_freqs) digits.emplace_back(l);
  return make_system_allow_interval(t.modulus.get_si(), std::move(digits));
}

std::vector<Rational> lambda0(const HadamardTriple& t) {
  require_normalized(t, "lambda0");
  std::vector<Rational> members = lattice_members(dual_system(t), digit_gcd(t));
  std::vector<Rational> out;
  out.reserve(members.size());
  for (const Rational& x : members) out.push_back(-x);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MBCycle> mb_cycles(const HadamardTriple& t) {
  require_normalized(t, "mb_cycles");
  CantorSystem dual = dual_system(t);
  std::vector<Rational> states = lattice_members(dual, digit_gcd(t));  // ascending
  Rational n_rat(t.modulus);

  // Each state has exactly one dual-map successor inside the state set:
  // two would force a nonvanishing pair sum and contradict unitarity.
  std::vector<std::size_t> next(states.size());
  std::vector<Int> label(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::size_t found = 0;
    for (const Int& l : t.l_freqs) {
      Rational image = (states[i] + Rational(l)) / n_rat;
      auto it = std::lower_bound(states.begin(), states.end(), image);
      if (it != states.end() && *it == image) {
        next[i] = static_cast<std::size_t>(it - states.begin());
        label[i] = l;
        ++found;
      }
    }
    if (found != 1)
      throw Error("internal", "dual-map successor count " + std::to_string(found) +
                                  " at state " + states[i].str() +
                                  "; triple is not a Hadamard triple");
  }

  std::vector<MBCycle> cycles;
  std::vector<char> visited(states.size(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (visited[i]) continue;
    MBCycle cycle;
    std::size_t cur = i;  // smallest unvisited state starts its cycle
    do {
      visited[cur] = 1;
      cycle.points.push_back(states[cur]);
      cycle.labels.push_back(label[cur]);
      cur = next[cur];
      if (visited[cur] && cur != i)
        throw Error("internal", "dual-map orbit left its cycle");
    } while (cur != i);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

SpectrumLadder spectrum_ladder(const HadamardTriple& t, int depth) {
  if (depth < 0) throw InvalidInput("bad_arguments", "depth must be >= 0");
  require_normalized(t, "spectrum_ladder");
  if (!check_hadamard(t).valid)
    throw InvalidInput("invalid_triple", "spectrum_ladder requires a valid Hadamard triple");

  SpectrumLadder ladder;
  ladder.triple = t;
  ladder.d = digit_gcd(t);
  ladder.lambda0 = lambda0(t);
  ladder.levels.push_back(ladder.lambda0);
  Rational n_rat(t.modulus);
  for (int n = 1; n <= depth; ++n) {
    std::set<Rational> next;
    for (const Rational& x : ladder.levels.back())
      for (const Int& l : t.l_freqs) next.insert(n_rat * x + Rational(l));
    std::vector<Rational> level(next.begin(), next.end());
    if (!std::includes(level.begin(), level.end(), ladder.levels.back().begin(),
                       ladder.levels.back().end()))
      throw Error("nesting_violation",
                  "ladder level " + std::to_string(n) + " does not contain its predecessor");
    ladder.levels.push_back(std::move(level));
  }
  return ladder;
}

EigenSpectrumReport eigen_spectrum(const HadamardTriple& t, const std::vector<Int>& factors,
                                   int depth, int max_n0_scan, int window,
                                   const std::vector<std::vector<unsigned>>& tuples) {
  if (factors.empty()) throw InvalidInput("bad_arguments", "need at least one scaling factor");
  if (max_n0_scan < 0 || window < 1 || depth < 0)
    throw InvalidInput("bad_arguments", "bad scan parameters");
  Int p = 1;
  for (const Int& f : factors) {
    if (f < 2) throw InvalidInput("bad_arguments", "scaling factors must be >= 2");
    p *= f;
  }
  HadamardTriple base = normalize_triple(t);
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), base.modulus.get_mpz_t());
  if (g != 1) throw InvalidInput("non_coprime", "factors must be coprime to the modulus");
  if (Int(base.b_digits.size()) >= base.modulus)
    throw InvalidInput("invalid_triple", "eigen spectra need #B < N");
  for (const auto& tuple : tuples)
    if (tuple.size() != factors.size())
      throw InvalidInput("bad_arguments", "tuple length must match the number of factors");

  EigenSpectrumReport rep;
  rep.base = base;
  rep.factors = factors;
  rep.window = window;
  rep.tuples = tuples;

  // Sizes of K(N, L) n Z/(d p^n) are nondecreasing in n, so stabilization
  // over the window reduces to equal counts. Levels are scanned lazily and
  // the scan stops at the first n whose window stays flat.
  CantorSystem dual = dual_system(base);
  Int d = digit_gcd(base);
  std::vector<std::size_t> sizes;
  Int denom = d;
  auto size_at = [&](int n) {
    while (static_cast<int>(sizes.size()) <= n) {
      sizes.push_back(lattice_members(dual, denom).size());
      denom *= p;
    }
    return sizes[n];
  };
  rep.n0 = -1;
  for (int n = 0; n + window <= max_n0_scan; ++n) {
    if (size_at(n) == size_at(n + window)) {
      rep.n0 = n;
      break;
    }
  }
  if (rep.n0 < 0)
    throw Inconclusive("inconclusive", "no stabilization within max_n0_scan = " +
                                           std::to_string(max_n0_scan));

  Int pn0 = 1;
  for (int i = 0; i < rep.n0; ++i) pn0 *= p;
  auto scaled_triple = [&](const Int& s) {
    std::vector<Int> l = base.l_freqs;
    for (Int& x : l) x *= s;
    return make_triple(base.modulus, base.b_digits, std::move(l));
  };
  rep.ladder = spectrum_ladder(scaled_triple(pn0), depth);

  for (const auto& tuple : tuples) {
    Int s = 1;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), factors[i].get_mpz_t(), tuple[i]);
      s *= pe;
    }
    SpectrumLadder scaled = spectrum_ladder(scaled_triple(s * pn0), depth);
    bool holds = true;
    for (int n = 0; n <= depth && holds; ++n)
      holds = scaled.levels[n] == scaled_sorted(rep.ladder.levels[n], Rational(s));
    rep.identity_holds.push_back(holds);
  }
  return rep;
}

}  // namespace cantor
