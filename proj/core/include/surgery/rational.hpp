#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace surgery {

// Arbitrary-precision integer. All number theory in this library is exact;
// there is no floating-point path anywhere.
using Integer = mpz_class;

/// Exact rational number, always stored reduced with positive denominator.
/// Zero is uniquely 0/1. Equality is structural equality of reduced forms.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<long>(n)) {}
  Rational(long long n);
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& n, const Integer& d);

  const Integer num() const { return v_.get_num(); }
  const Integer den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;  // kept canonical at all times
};

/// Builds the reduced fraction n/d. d = 0 is a domain error.
Rational rat(const Integer& n, const Integer& d);
Rational rat(long long n, long long d);

/// True iff x is an integer >= 0 (denominator 1, numerator >= 0).
bool is_nonneg_integer(const Rational& x);

/// gcd of three integers by absolute value; gcd3(0,0,0) = 0.
Integer gcd3(const Integer& a, const Integer& b, const Integer& c);

/// Serializes as "n/d", the denominator printed even when 1.
std::string to_string(const Rational& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

/// Parses "n/d" or a bare integer "n". Malformed input is a domain error.
Rational parse_rational(const std::string& s);

}  // namespace surgery
