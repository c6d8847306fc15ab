#include "surgery/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace surgery {

Rational::Rational(long long n) : v_(Integer(static_cast<long>(n))) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
}

Rational::Rational(const Integer& n, const Integer& d) : v_(n, d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational rat(const Integer& n, const Integer& d) { return Rational(n, d); }

Rational rat(long long n, long long d) {
  return Rational(Rational(n).num(), Rational(d).num());
}

bool is_nonneg_integer(const Rational& x) {
  return x.is_integer() && x.sign() >= 0;
}

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::string to_string(const Rational& x) {
  return x.num().get_str() + "/" + x.den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << to_string(x);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash));
    Integer d(s.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw std::domain_error("parse_rational: malformed input '" + s + "'");
  }
}

}  // namespace surgery
