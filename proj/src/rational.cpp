#include "cantor/rational.hpp"

#include <cctype>

#include "cantor/errors.hpp"

namespace cantor {

Rational::Rational(const Int& num, const Int& den) {
  if (den == 0) throw InvalidInput("bad_rational", "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InvalidInput("bad_rational", "division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

Int Rational::floor() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

Int Rational::ceil() const {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::str() const {
  std::string s = num().get_str();
  if (!is_integer()) {
    s += '/';
    s += den().get_str();
  }
  return s;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parse_signed_int(const std::string& text) {
  std::string body = text;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body = body.substr(1);
  if (!all_digits(body)) throw InvalidInput("bad_rational", "malformed integer: '" + text + "'");
  return Int(text);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_signed_int(text));
  Int num = parse_signed_int(text.substr(0, slash));
  std::string den_text = text.substr(slash + 1);
  if (!all_digits(den_text))
    throw InvalidInput("bad_rational", "malformed denominator: '" + text + "'");
  Int den(den_text);
  if (den == 0) throw InvalidInput("bad_rational", "zero denominator: '" + text + "'");
  return Rational(num, den);
}

std::size_t hash_int(const Int& z) {
  // FNV over the limbs; sign folded in at the end.
  std::size_t h = 1469598103934665603ULL;
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
    h *= 1099511628211ULL;
  }
  if (sgn(z) < 0) h = ~h;
  return h;
}

std::string int_str(const Int& z) { return z.get_str(); }

Int parse_int(const std::string& text) {
  Rational r = Rational::parse(text);
  if (!r.is_integer()) throw InvalidInput("bad_rational", "expected integer, got '" + text + "'");
  return r.num();
}

std::string join_rationals(const std::vector<Rational>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i].str();
  }
  return out;
}

}  // namespace cantor
