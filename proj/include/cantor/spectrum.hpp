#pragma once

#include <vector>

#include "cantor/hadamard.hpp"
#include "cantor/system.hpp"

namespace cantor {

// Translate so that 0 lands in both B and L (subtracting the minima).
HadamardTriple normalize_triple(const HadamardTriple& t);

// d = gcd(B).
Int digit_gcd(const HadamardTriple& t);

// The dual self-similar system K(N, L) of the maps (x + l)/N.
CantorSystem dual_system(const HadamardTriple& t);

// -(K(N, L) n Z/d): finite, 0 always included. Requires 0 in B n L.
std::vector<Rational> lambda0(const HadamardTriple& t);

// A periodic orbit of the dual maps; tau_{labels[i]}(points[i]) is the next
// point (cyclically). Listed starting from the smallest point.
struct MBCycle {
  std::vector<Rational> points;
  std::vector<Int> labels;
};

// All cycles of the dual maps on (Z/d) n K(N, L). For a valid triple this
// state set decomposes into disjoint cycles whose union is -lambda0.
std::vector<MBCycle> mb_cycles(const HadamardTriple& t);

struct SpectrumLadder {
  HadamardTriple triple;
  Int d;
  std::vector<Rational> lambda0;
  std::vector<std::vector<Rational>> levels;  // levels[n], ascending, nested
};

// levels[0] = lambda0 and levels[n] = N * levels[n-1] + L, with the nesting
// levels[n-1] c levels[n] asserted at every step.
SpectrumLadder spectrum_ladder(const HadamardTriple& t, int depth);

struct EigenSpectrumReport {
  HadamardTriple base;       // normalized input triple
  std::vector<Int> factors;  // pairwise scaling factors p_1 ... p_k
  int n0 = -1;               // observed stabilization level of K(N,L) n Z/(d p^n)
  int window = 0;
  SpectrumLadder ladder;     // ladder of (N, B, p^{n0} L)
  std::vector<std::vector<unsigned>> tuples;  // exponent tuples checked
  std::vector<bool> identity_holds;           // ladder of scaled triple == scaled ladder
};

// Builds the scaled eigen-spectrum: finds the smallest n with
// K(N,L) n Z/(d p^n) unchanged for `window` further levels (p the product of
// the factors), then verifies level-by-level that scaling the digits by
// prod p_i^{n_i} scales the whole ladder. Throws Inconclusive if no
// stabilization shows up within max_n0_scan.
EigenSpectrumReport eigen_spectrum(const HadamardTriple& t, const std::vector<Int>& factors,
                                   int depth, int max_n0_scan, int window,
                                   const std::vector<std::vector<unsigned>>& tuples);

}  // namespace cantor
