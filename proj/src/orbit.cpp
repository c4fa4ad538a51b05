#include "cantor/orbit.hpp"

#include <limits>
#include <unordered_map>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

template <class T>
struct HashFor {
  using type = std::hash<T>;
};
template <>
struct HashFor<Int> {
  using type = IntHash;
};

// Orbit arithmetic on scaled integers: a state xi is stored as T = xi*u*N,
// successors are T' = q*T - offset[a], and the hull test is lo <= T <= hi.
// Instantiated with long when everything fits, mpz otherwise.
template <class T>
struct Engine {
  T q;
  T lo, hi;
  std::vector<T> offsets;  // digit * u * N, same order as system digits

  bool in_range(const T& t) const { return lo <= t && t <= hi; }
  T successor(const T& t, std::size_t digit) const { return q * t - offsets[digit]; }
};

struct ScaledProblem {
  Int denom;  // u * N
  Int root;
  Int lo, hi;
  std::vector<Int> offsets;
  bool root_in_hull = false;
};

ScaledProblem scale_problem(const CantorSystem& sys, const Rational& x) {
  ScaledProblem p;
  p.denom = x.den() * sys.scale;
  p.root = x.num() * sys.scale;
  Rational d(p.denom);
  p.lo = (sys.hull_lo * d).ceil();
  p.hi = (sys.hull_hi * d).floor();
  for (const Rational& a : sys.digits) {
    Rational off = a * d;
    p.offsets.push_back(off.num());  // den divides N, so off is integral
  }
  p.root_in_hull = sys.in_hull(x);
  return p;
}

bool fits_int64(const ScaledProblem& p, long q) {
  const Int limit = Int(std::numeric_limits<long>::max() / 4) / Int(q + 1);
  auto ok = [&](const Int& v) { return abs(v) < limit; };
  if (!ok(p.lo) || !ok(p.hi) || !ok(p.root)) return false;
  for (const Int& c : p.offsets)
    if (!ok(c)) return false;
  return true;
}

Engine<long> make_engine_i64(const ScaledProblem& p, long q) {
  Engine<long> e;
  e.q = q;
  e.lo = p.lo.get_si();
  e.hi = p.hi.get_si();
  for (const Int& c : p.offsets) e.offsets.push_back(c.get_si());
  return e;
}

Engine<Int> make_engine_mpz(const ScaledProblem& p, long q) {
  Engine<Int> e;
  e.q = q;
  e.lo = p.lo;
  e.hi = p.hi;
  e.offsets = p.offsets;
  return e;
}

Rational unscale(const Int& t, const Int& denom) { return Rational(t, denom); }
Rational unscale(long t, const Int& denom) { return Rational(Int(t), denom); }

template <class T>
struct DfsResult {
  bool member = false;
  std::vector<std::size_t> preperiod;  // digit indices
  std::vector<std::size_t> period;
  std::size_t visited = 0;
};

// Iterative depth-first search for a reachable cycle; digits are tried in
// ascending order, and the first back edge closes the certificate.
template <class T>
DfsResult<T> dfs_cycle(const Engine<T>& eng, const T& root) {
  DfsResult<T> out;
  enum : char { kGray = 1, kBlack = 2 };
  std::unordered_map<T, char, typename HashFor<T>::type> color;
  std::unordered_map<T, std::size_t, typename HashFor<T>::type> depth_of;

  struct Frame {
    T state;
    std::size_t next_digit = 0;
    std::size_t from_digit = 0;  // edge label used to enter this frame
  };
  std::vector<Frame> stack;
  color[root] = kGray;
  depth_of[root] = 0;
  stack.push_back({root, 0, 0});

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_digit >= eng.offsets.size()) {
      color[top.state] = kBlack;
      depth_of.erase(top.state);
      stack.pop_back();
      continue;
    }
    std::size_t d = top.next_digit++;
    T next = eng.successor(top.state, d);
    if (!eng.in_range(next)) continue;
    auto it = color.find(next);
    if (it == color.end()) {
      color[next] = kGray;
      depth_of[next] = stack.size();
      stack.push_back({next, 0, d});
      continue;
    }
    if (it->second == kGray) {
      // Cycle: stack[j] == next for j = depth_of[next].
      std::size_t j = depth_of[next];
      for (std::size_t i = 1; i <= j; ++i) out.preperiod.push_back(stack[i].from_digit);
      for (std::size_t i = j + 1; i < stack.size(); ++i) out.period.push_back(stack[i].from_digit);
      out.period.push_back(d);
      out.member = true;
      out.visited = color.size();
      return out;
    }
  }
  out.visited = color.size();
  return out;
}

template <class T>
void bfs_closure(const Engine<T>& eng, const T& root, const Int& denom, OrbitGraph& g) {
  std::unordered_map<T, std::size_t, typename HashFor<T>::type> index;
  std::vector<T> order;
  index[root] = 0;
  order.push_back(root);
  g.edges.emplace_back();
  for (std::size_t head = 0; head < order.size(); ++head) {
    T cur = order[head];
    for (std::size_t d = 0; d < eng.offsets.size(); ++d) {
      T next = eng.successor(cur, d);
      if (!eng.in_range(next)) continue;
      auto [it, inserted] = index.try_emplace(next, order.size());
      if (inserted) {
        order.push_back(next);
        g.edges.emplace_back();
      }
      g.edges[head].emplace_back(d, it->second);
    }
  }
  g.states.reserve(order.size());
  for (const T& t : order) g.states.push_back(unscale(t, denom));
}

}  // namespace

Int state_bound(const CantorSystem& sys, const Int& u) {
  if (u < 1) throw InvalidInput("bad_arguments", "denominator must be >= 1");
  return (Rational(Int(u * sys.scale)) * sys.diameter()).floor() + 1;
}

OrbitGraph build_orbit_graph(const CantorSystem& sys, const Rational& x0) {
  OrbitGraph g;
  g.system = sys;
  g.root = x0;
  ScaledProblem p = scale_problem(sys, x0);
  g.root_in_hull = p.root_in_hull;
  if (!p.root_in_hull) return g;
  if (fits_int64(p, sys.base)) {
    bfs_closure(make_engine_i64(p, sys.base), p.root.get_si(), p.denom, g);
  } else {
    bfs_closure(make_engine_mpz(p, sys.base), p.root, p.denom, g);
  }
  return g;
}

MembershipCertificate is_member(const CantorSystem& sys, const Rational& x) {
  MembershipCertificate cert;
  cert.state_bound = state_bound(sys, x.den());
  if (!sys.in_hull(x)) return cert;

  ScaledProblem p = scale_problem(sys, x);
  std::vector<std::size_t> pre, per;
  if (fits_int64(p, sys.base)) {
    auto r = dfs_cycle(make_engine_i64(p, sys.base), p.root.get_si());
    cert.member = r.member;
    cert.states_visited = r.visited;
    pre = std::move(r.preperiod);
    per = std::move(r.period);
  } else {
    auto r = dfs_cycle(make_engine_mpz(p, sys.base), p.root);
    cert.member = r.member;
    cert.states_visited = r.visited;
    pre = std::move(r.preperiod);
    per = std::move(r.period);
  }
  for (std::size_t d : pre) cert.preperiod.push_back(sys.digits[d]);
  for (std::size_t d : per) cert.period.push_back(sys.digits[d]);
  return cert;
}

Rational evaluate_coding(const CantorSystem& sys, const std::vector<Rational>& preperiod,
                         const std::vector<Rational>& period) {
  if (period.empty()) throw InvalidInput("bad_arguments", "period must be nonempty");
  Rational q(sys.base);
  auto horner = [&](const std::vector<Rational>& word) {
    Rational v(0);
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = (v + *it) / q;
    return v;
  };
  Int qn;
  mpz_pow_ui(qn.get_mpz_t(), Int(sys.base).get_mpz_t(), period.size());
  Rational periodic = horner(period) * Rational(qn, qn - 1);
  Int qp;
  mpz_pow_ui(qp.get_mpz_t(), Int(sys.base).get_mpz_t(), preperiod.size());
  return horner(preperiod) + periodic / Rational(qp);
}

}  // namespace cantor
