#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cantor/system.hpp"

namespace cantor {

// Finite closure of a rational root under xi -> q*xi - a, keeping only
// successors inside the hull. States sit on the grid Z/(u*N), u the reduced
// denominator of the root, so the closure always terminates.
struct OrbitGraph {
  CantorSystem system;
  Rational root;
  bool root_in_hull = false;
  std::vector<Rational> states;  // breadth-first discovery order, root first
  // edges[i]: (digit index, successor state index), digit indices ascending
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;

  std::size_t size() const { return states.size(); }
};

OrbitGraph build_orbit_graph(const CantorSystem& sys, const Rational& x0);

// floor(u * N * diam) + 1: grid spacing 1/(uN) inside an interval of length
// diam admits at most that many states.
Int state_bound(const CantorSystem& sys, const Int& u);

struct MembershipCertificate {
  bool member = false;
  std::vector<Rational> preperiod;
  std::vector<Rational> period;  // nonempty exactly when member
  Int state_bound;
  std::size_t states_visited = 0;
};

// x is in K(q, A) iff a cycle is reachable from x in the orbit graph.
// The returned coding takes the smallest digit first at every branch of the
// depth-first search, so results are reproducible.
MembershipCertificate is_member(const CantorSystem& sys, const Rational& x);

// Exact value of preperiod . (period)^infinity in base q. Period must be
// nonempty.
Rational evaluate_coding(const CantorSystem& sys, const std::vector<Rational>& preperiod,
                         const std::vector<Rational>& period);

}  // namespace cantor
