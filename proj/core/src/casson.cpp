#include "surgery/casson.hpp"

#include <cstdlib>
#include <stdexcept>

namespace surgery::casson {

Rational dedekind_sum(const Integer& b, const Integer& a) {
  if (a < 1) throw std::domain_error("dedekind_sum: need a >= 1");
  if (gcd3(a, b, 0) != 1) throw std::domain_error("dedekind_sum: gcd(a,b) != 1");
  // s(b,a) = (1/4a^2) * sum_{k=1}^{a-1} (2k - a)(2(kb mod a) - a).
  // kb/a is never an integer for 1 <= k < a since gcd(a,b) = 1.
  Integer sum = 0;
  Integer bm = b % a;
  if (bm < 0) bm += a;
  Integer r = 0;  // k*b mod a, incrementally
  for (Integer k = 1; k < a; ++k) {
    r += bm;
    if (r >= a) r -= a;
    sum += (2 * k - a) * (2 * r - a);
  }
  return Rational(sum, 4 * a * a);
}

Rational lambda_lens(std::int64_t a, std::int64_t b) {
  if (!(a > b && b > 0)) throw std::domain_error("lambda_lens: need a > b > 0");
  return dedekind_sum(b, a) * rat(-1, 2);
}

Rational lambda_Lq2_closed(std::int64_t q) {
  if (q < 1 || q % 2 == 0) throw std::domain_error("lambda_Lq2_closed: q must be odd >= 1");
  return rat(-5, 48 * q) - rat(q, 48) + rat(1, 8);
}

Rational lambda_Lq1_closed(std::int64_t q) {
  if (q < 1) throw std::domain_error("lambda_Lq1_closed: q must be >= 1");
  return rat(-1, 12 * q) - rat(q, 24) + rat(1, 8);
}

namespace {

void check_pk(std::int64_t p, std::int64_t k) {
  if (!(0 < k && k < p)) throw std::domain_error("lambda_seifert: need 0 < k < p");
}

}  // namespace

Rational lambda_seifert_pos(std::int64_t p, std::int64_t m, std::int64_t k) {
  check_pk(p, k);
  Integer D = Integer(p) * m - Integer(k) * k;
  if (D == 0) throw std::domain_error("lambda_seifert_pos: pm - k^2 = 0");
  Integer P = Integer(k) * (p - k) * (m - k);
  Integer S = Integer(p) + m - k;
  return Rational(-P, 24 * D) + rat(1, 4) + Rational(-S, 12 * D) + Rational(-S, 24);
}

Rational lambda_seifert_neg(std::int64_t p, std::int64_t m, std::int64_t k) {
  check_pk(p, k);
  Integer D = Integer(k) * k - Integer(m) * p;
  if (D == 0) throw std::domain_error("lambda_seifert_neg: k^2 - mp = 0");
  Integer P = Integer(k) * (k - m) * (p - k);
  Integer S = Integer(m) + p - k;
  return Rational(-P, 24 * D) + Rational(S, 12 * D) + Rational(-S, 24);
}

std::optional<Rational> lambda_surgered(std::int64_t p, std::int64_t m, std::int64_t k) {
  if (!(0 < k && k * 2 <= p)) return std::nullopt;
  Integer D = Integer(p) * m - Integer(k) * k;
  if (D == 0) return std::nullopt;

  auto lens_lambda = [](const lens::OrientedLensSpace& L) -> Rational {
    if (L.space.is_s3()) return Rational(0);
    Rational v = lambda_lens(L.space.p, L.space.q);
    return L.sign < 0 ? -v : v;
  };

  if (k == 1 && m % 2 == 0 && m != 0) {
    // M = L(pm-1, p)
    return lens_lambda(lens::reduce(Integer(p) * m - 1, p));
  }
  if (k >= 2 && std::abs(m - k) == 1) {
    // M = L(pk +- p - k^2, k +- 1)
    return lens_lambda(lens::reduce(D, m - k == 1 ? k + 1 : k - 1));
  }
  if (m <= 0) return lambda_seifert_neg(p, m, k);
  if (m == 1) return std::nullopt;  // three exceptional fibers, no formula
  if (D > 0) return lambda_seifert_pos(p, m, k);
  return std::nullopt;
}

CwSignResult cw_sign_filter(std::int64_t p, std::int64_t m, std::int64_t k) {
  Integer D = Integer(p) * m - Integer(k) * k;
  if (D == 0) throw std::domain_error("cw_sign_filter: |pm - k^2| = 0");
  if (gcd3(p, k, m) != 1) throw std::domain_error("cw_sign_filter: gcd(p,k,m) != 1");
  Integer qpz = abs(D);
  if (!qpz.fits_slong_p()) throw std::domain_error("cw_sign_filter: q' out of range");
  std::int64_t qp = qpz.get_si();

  CwSignResult res;
  if (qp % 2 == 1) res.lambda_L = lambda_Lq2_closed(qp);
  auto lm = lambda_surgered(p, m, k);
  if (!lm || qp % 2 == 0) return res;  // unknown: keep both signs

  res.known = true;
  res.lambda_M = lm;
  bool positive_framing = D > 0;
  // q > 0 branch uses +lambda(L(q',2)), q < 0 uses -lambda(L(q',2))
  if (positive_framing) {
    res.plus_ok = res.lambda_L >= *lm;
    res.minus_ok = -res.lambda_L >= *lm;
  } else {
    res.plus_ok = *lm >= res.lambda_L;
    res.minus_ok = *lm >= -res.lambda_L;
  }
  return res;
}

Rational delta_lambda(std::int64_t p, std::int64_t m, std::int64_t k,
                      std::int64_t q_signed) {
  Integer D = Integer(p) * m - Integer(k) * k;
  if (abs(D) != abs(Integer(q_signed)))
    throw std::domain_error("delta_lambda: |q| != |pm - k^2|");
  std::int64_t qp = std::abs(q_signed);
  if (qp % 2 == 0) throw std::domain_error("delta_lambda: q must be odd");
  auto lm = lambda_surgered(p, m, k);
  if (!lm) throw std::domain_error("delta_lambda: lambda(M) not computable here");
  Rational lamL = lambda_Lq2_closed(qp);
  if (q_signed < 0) lamL = -lamL;
  return Rational(qp) * (lamL - *lm);
}

}  // namespace surgery::casson
