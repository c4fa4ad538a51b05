#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// (N, B, L) with the normalized exponential matrix indexed by B x L.
// Element lists are kept sorted ascending with distinct values.
struct HadamardTriple {
  Int modulus;                // N >= 2
  std::vector<Int> b_digits;  // B
  std::vector<Int> l_freqs;   // L
};

HadamardTriple make_triple(Int modulus, std::vector<Int> b_digits, std::vector<Int> l_freqs);

struct HadamardCheck {
  bool valid = false;
  std::optional<std::pair<Int, Int>> witness;  // first violating (l, l') pair
};

// Unitarity is equivalent to: for every l != l' in L the root-of-unity sum
// over {b (l - l') mod N : b in B} vanishes. Decided exactly via cyclotomic
// divisibility, no floating tolerance.
HadamardCheck check_hadamard(const HadamardTriple& t);

// (N, B + b0, L + l0); valid whenever the input is.
HadamardTriple translate_triple(const HadamardTriple& t, const Int& b0, const Int& l0);

// (N, B, pL) for gcd(p, N) = 1; valid whenever the input is.
HadamardTriple scale_spectrum_digits(const HadamardTriple& t, const Int& p);

}  // namespace cantor
