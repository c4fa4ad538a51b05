#include "cantor/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "cantor/errors.hpp"
#include "cantor/number_theory.hpp"

namespace cantor {

namespace {

constexpr long kGridLimit = 1LL << 27;

}  // namespace

std::vector<Rational> dp_level_points(const CantorSystem& sys, long p, unsigned n) {
  if (p < 2) throw InvalidInput("bad_arguments", "p must be >= 2");

  // Scaled lattice: x = T / (p^n N), T integer, hull test lo <= T <= hi.
  Int pn;
  mpz_pow_ui(pn.get_mpz_t(), Int(p).get_mpz_t(), n);
  Int denom = pn * sys.scale;
  Int lo_z = (sys.hull_lo * Rational(denom)).ceil();
  Int hi_z = (sys.hull_hi * Rational(denom)).floor();
  if (hi_z < lo_z) return {};
  Int width = hi_z - lo_z + 1;
  if (!mpz_fits_slong_p(width.get_mpz_t()) || width > kGridLimit)
    throw LimitExceeded("level_too_large",
                        "level grid has " + int_str(width) + " nodes (limit " +
                            std::to_string(kGridLimit) + ")");
  const Int i64_guard = Int(std::numeric_limits<long>::max() / 4) / Int(sys.base + 1);
  if (abs(lo_z) >= i64_guard || abs(hi_z) >= i64_guard)
    throw LimitExceeded("level_too_large", "scaled grid exceeds the integer fast path");

  const long lo = lo_z.get_si();
  const long hi = hi_z.get_si();
  const long q = sys.base;
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);

  std::vector<long> offsets;
  offsets.reserve(sys.digits.size());
  for (const Rational& a : sys.digits) offsets.push_back((a * Rational(denom)).num().get_si());

  // Greatest fixed point: repeatedly delete states with no surviving
  // successor; what remains carries an infinite digit path.
  std::vector<unsigned char> alive(count, 1);
  std::vector<unsigned char> outdeg(count, 0);
  std::vector<long> worklist;
  auto idx = [&](long t) { return static_cast<std::size_t>(t - lo); };
  for (long t = lo; t <= hi; ++t) {
    unsigned char deg = 0;
    for (long c : offsets) {
      long s = q * t - c;
      if (lo <= s && s <= hi) ++deg;
    }
    outdeg[idx(t)] = deg;
    if (deg == 0) worklist.push_back(t);
  }
  while (!worklist.empty()) {
    long t = worklist.back();
    worklist.pop_back();
    alive[idx(t)] = 0;
    // predecessors: s with q*s - c == t
    for (long c : offsets) {
      long sum = t + c;
      if (sum % q != 0) continue;
      long s = sum / q;
      if (s < lo || s > hi || !alive[idx(s)]) continue;
      if (--outdeg[idx(s)] == 0) worklist.push_back(s);
    }
  }

  // Survivors on the sublattice Z/p^n, i.e. scaled values divisible by N.
  if (!mpz_fits_slong_p(sys.scale.get_mpz_t()))
    throw LimitExceeded("level_too_large", "digit scale exceeds the integer fast path");
  const long scale_ll = sys.scale.get_si();
  std::vector<Rational> points;
  for (long t = lo; t <= hi; ++t) {
    if (!alive[idx(t)]) continue;
    if (t % scale_ll != 0) continue;
    points.emplace_back(Int(t), denom);
  }
  return points;
}

IntersectionReport intersect_dp(const CantorSystem& sys, long p, int max_level, int window) {
  if (max_level < 0) throw InvalidInput("bad_arguments", "max_level must be >= 0");
  if (window < 1) throw InvalidInput("bad_arguments", "window must be >= 1");
  if (p < 2) throw InvalidInput("bad_arguments", "p must be >= 2");

  IntersectionReport rep;
  rep.system = sys;
  rep.p = p;
  rep.max_level = max_level;
  rep.window = window;
  for (const auto& [prime, mult] : factorize(Int(p))) {
    (void)mult;
    rep.prime_base.push_back(prime);
  }

  std::map<Rational, int> first_level;
  rep.new_points_per_level.assign(max_level + 1, 0);
  for (int n = 0; n <= max_level; ++n) {
    std::size_t fresh = 0;
    for (const Rational& x : dp_level_points(sys, p, n))
      if (first_level.emplace(x, n).second) ++fresh;
    rep.new_points_per_level[n] = fresh;
  }
  rep.points.assign(first_level.begin(), first_level.end());

  int trailing = 0;
  for (int n = max_level; n >= 0 && rep.new_points_per_level[n] == 0; --n) ++trailing;
  rep.empty_levels_trailing = trailing;
  rep.stabilized = trailing >= window;
  return rep;
}

DimensionBound dimension_upper_bound(const CantorSystem& sys, int max_m) {
  if (max_m < 1) throw InvalidInput("bad_arguments", "max_m must be >= 1");

  DimensionBound out;
  out.bound = 2.0;  // any real bound below replaces this
  std::set<Rational> sumset(sys.digits.begin(), sys.digits.end());
  const long double logq = std::log(static_cast<long double>(sys.base));
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) {
      // A_m = q * A_{m-1} + A
      std::set<Rational> next;
      Rational q(sys.base);
      for (const Rational& s : sumset)
        for (const Rational& a : sys.digits) next.insert(q * s + a);
      sumset = std::move(next);
    }
    if (sumset.size() > (1u << 24))
      throw LimitExceeded("sumset_limit", "digit sumset grew past 2^24 elements");
    out.cardinalities.push_back(sumset.size());
    long double value = std::log(static_cast<long double>(sumset.size())) / (m * logq);
    if (static_cast<double>(value) < out.bound) {
      out.bound = static_cast<double>(value);
      out.best_m = m;
    }
  }
  return out;
}

UniformBoundReport uniform_bound_experiment(const CantorSystem& sys, long p,
                                            const std::vector<Rational>& alphas, int level,
                                            int diff_max_level, int diff_window) {
  if (p < 2) throw InvalidInput("bad_arguments", "p must be >= 2");
  if (level < 0) throw InvalidInput("bad_arguments", "level must be >= 0");
  Int g;
  mpz_gcd(g.get_mpz_t(), Int(p).get_mpz_t(), Int(sys.base).get_mpz_t());
  if (g != 1) throw InvalidInput("non_coprime", "p must be coprime to the base");

  UniformBoundReport rep;
  Int pl;
  mpz_pow_ui(pl.get_mpz_t(), Int(p).get_mpz_t(), level);
  for (const Rational& alpha : alphas) {
    // x = d / p^level with x + alpha inside the hull
    Int d_lo = ((sys.hull_lo - alpha) * Rational(pl)).ceil();
    Int d_hi = ((sys.hull_hi - alpha) * Rational(pl)).floor();
    Int width = d_hi - d_lo + 1;
    if (width > (1L << 22))
      throw LimitExceeded("level_too_large", "alpha scan grid too large");
    std::vector<Rational> hits;
    std::size_t n_hits = 0;
    for (Int d = d_lo; d <= d_hi; ++d) {
      Rational x(d, pl);
      if (is_member(sys, x + alpha).member) {
        ++n_hits;
        hits.push_back(x);
      }
    }
    rep.counts.emplace_back(alpha, n_hits);
    rep.points_per_alpha.push_back(std::move(hits));
  }

  // Certified bound via the difference set, when the theorem applies.
  std::set<Rational> diff_set;
  for (const Rational& a : sys.digits)
    for (const Rational& b : sys.digits) diff_set.insert(a - b);
  if (Int(diff_set.size()) >= sys.base) {
    rep.bound_status = "diff_set_too_large";
    return rep;
  }
  CantorSystem diff_sys =
      make_system(sys.base, std::vector<Rational>(diff_set.begin(), diff_set.end()));
  IntersectionReport diff = intersect_dp(diff_sys, p, diff_max_level, diff_window);
  rep.diff_report = diff;
  if (!diff.stabilized) {
    rep.bound_status = "not_stabilized";
    return rep;
  }
  Int n_q = 1;
  for (const auto& [x, lvl] : diff.points) {
    (void)lvl;
    if (x.den() > n_q) n_q = x.den();
  }
  rep.max_denominator = n_q;
  Int bound = (Rational(n_q) * sys.diameter()).floor() + 1;
  rep.certified_bound = bound;
  rep.bound_status = "certified";
  for (const auto& [alpha, count] : rep.counts) {
    (void)alpha;
    if (Int(count) > bound)
      throw Error("certified_bound_violated",
                  "count exceeds the certified bound; difference enumeration was incomplete");
  }
  return rep;
}

}  // namespace cantor
