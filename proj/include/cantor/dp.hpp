#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/orbit.hpp"
#include "cantor/system.hpp"

namespace cantor {

// All x = d/p^n (d integer) inside the hull with x in K(q, A). The level
// grid and the orbit recursion share the lattice Z/(p^n N), so the points
// with an infinite digit path are computed as the greatest fixed point of
// "every state keeps a successor", then read off the sublattice Z/p^n.
std::vector<Rational> dp_level_points(const CantorSystem& sys, long p, unsigned n);

struct IntersectionReport {
  CantorSystem system;
  long p = 0;
  std::vector<Int> prime_base;  // distinct primes of p
  int max_level = 0;
  int window = 0;
  std::vector<std::pair<Rational, int>> points;  // (x, first level), ascending in x
  bool stabilized = false;
  int empty_levels_trailing = 0;
  std::vector<std::size_t> new_points_per_level;  // indexed by level 0..max_level
};

// Union of dp_level_points over n = 0..max_level. The report is exact for
// the scanned levels; `stabilized` is the windowed heuristic only.
IntersectionReport intersect_dp(const CantorSystem& sys, long p, int max_level, int window);

struct DimensionBound {
  double bound = 1.0;
  int best_m = 1;
  std::vector<std::size_t> cardinalities;  // #A_m for m = 1..max_m
};

// min over m <= max_m of log #(q^{m-1}A + ... + A) / (m log q).
DimensionBound dimension_upper_bound(const CantorSystem& sys, int max_m);

struct UniformBoundReport {
  std::vector<std::pair<Rational, std::size_t>> counts;           // (alpha, count)
  std::vector<std::vector<Rational>> points_per_alpha;            // the counted x's
  std::optional<Int> certified_bound;
  std::string bound_status;  // "certified" | "diff_set_too_large" | "not_stabilized"
  Int max_denominator;       // N_Q over the difference-set points, when certified
  std::optional<IntersectionReport> diff_report;
};

// Counts #{x in D_p up to `level` : x + alpha in K(q, A)} per alpha. When
// #(A - A) < q and D_p cap K(q, A - A) stabilizes, also certifies the
// uniform bound floor(N_Q * diam) + 1 and asserts every count obeys it.
UniformBoundReport uniform_bound_experiment(const CantorSystem& sys, long p,
                                            const std::vector<Rational>& alphas, int level,
                                            int diff_max_level, int diff_window);

}  // namespace cantor
