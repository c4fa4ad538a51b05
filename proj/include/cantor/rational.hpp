#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace cantor {

using Int = mpz_class;

// Exact rational scalar. Values are always stored in canonical form
// (reduced, positive denominator), so equality is structural and values can
// be used as hash keys for orbit states.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(const Int& n) : v_(n) {}
  Rational(const Int& num, const Int& den);

  // Accepts "num", "num/den", optional leading '-'. Throws InvalidInput.
  static Rational parse(const std::string& text);

  const Int& num() const { return v_.get_num(); }
  const Int& den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Int floor() const;
  Int ceil() const;
  Rational abs() const;
  double to_double() const { return v_.get_d(); }

  // "num/den" with "/den" omitted when the denominator is 1.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  // mpq arithmetic keeps canonical form as long as operands are canonical.
  explicit Rational(mpq_class q) : v_(std::move(q)) {}
  mpq_class v_;
};

std::size_t hash_int(const Int& z);

// Explicit hasher for mpz-keyed containers.
struct IntHash {
  std::size_t operator()(const Int& z) const { return hash_int(z); }
};

std::string int_str(const Int& z);
Int parse_int(const std::string& text);

// Convenience for digit lists etc.
std::string join_rationals(const std::vector<Rational>& xs, const std::string& sep);

}  // namespace cantor

template <>
struct std::hash<cantor::Rational> {
  std::size_t operator()(const cantor::Rational& r) const {
    std::size_t h = cantor::hash_int(r.num());
    return h ^ (cantor::hash_int(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
