#include "surgery/lens.hpp"

#include <numeric>
#include <stdexcept>

namespace surgery::lens {

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

LensSpace::LensSpace(std::int64_t p_, std::int64_t q_) : p(p_), q(q_) {
  if (p < 1) throw std::domain_error("LensSpace: order must be positive");
  if (p == 1) {
    if (q != 0) throw std::domain_error("LensSpace: S^3 is the sentinel (1,0)");
    return;
  }
  if (q <= 0 || q >= p) throw std::domain_error("LensSpace: need 0 < q < p");
  if (std::gcd(p, q) != 1) throw std::domain_error("LensSpace: gcd(p,q) != 1");
}

std::string LensSpace::str() const {
  return "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::string OrientedLensSpace::str() const {
  return (sign < 0 ? "-" : "") + space.str();
}

OrientedLensSpace reduce(const Integer& a_in, const Integer& b_in) {
  if (a_in == 0) throw std::domain_error("reduce: |H1| = 0 (degenerate, S^1 x S^2)");
  Integer a = a_in, b = b_in;
  if (a < 0) {
    // L(-a, b) = L(a, -b): same oriented manifold, slope rewritten
    a = -a;
    b = -b;
  }
  if (!a.fits_slong_p()) throw std::domain_error("reduce: order out of range");
  std::int64_t ai = a.get_si();
  if (ai == 1) return {1, LensSpace::s3()};
  Integer bm = b % a;
  if (bm < 0) bm += a;
  std::int64_t bi = bm.get_si();
  if (bi == 0 || std::gcd(ai, bi) != 1)
    throw std::domain_error("reduce: gcd(a,b) != 1");
  return {1, LensSpace(ai, bi)};
}

namespace {

std::int64_t inv_mod(std::int64_t b, std::int64_t a) {
  // extended Euclid; gcd(a,b) = 1 assumed
  std::int64_t t = 0, newt = 1, r = a, newr = b;
  while (newr != 0) {
    std::int64_t qq = r / newr;
    t = std::exchange(newt, t - qq * newt);
    r = std::exchange(newr, r - qq * newr);
  }
  return pos_mod(t, a);
}

}  // namespace

OrientedLensSpace oriented_normal_form(const OrientedLensSpace& L) {
  if (L.space.is_s3()) return {1, LensSpace::s3()};
  std::int64_t a = L.space.p;
  std::int64_t b = L.sign < 0 ? a - L.space.q : L.space.q;
  std::int64_t binv = inv_mod(b, a);
  return {1, LensSpace(a, std::min(b, binv))};
}

bool same_oriented(const OrientedLensSpace& A, const OrientedLensSpace& B) {
  return oriented_normal_form(A) == oriented_normal_form(B);
}

Rational epsilon(std::int64_t a) {
  return (a % 2 == 0) ? rat(-1, 2) : Rational(0);
}

Rational d_lens(const LensSpace& L, std::int64_t i) {
  if (i < 0 || i >= L.p) throw std::domain_error("d_lens: label out of range");
  if (L.is_s3()) return Rational(0);
  std::int64_t p = L.p, q = L.q;
  Rational term = rat(-1, 4) + Rational(Integer(2 * i + 1 - p - q) * Integer(2 * i + 1 - p - q),
                                        Integer(4) * p * q);
  std::int64_t p2 = q, q2 = p % q;
  return term - d_lens(q2 == 0 ? LensSpace::s3() : LensSpace(p2, q2), i % q);
}

std::vector<DTraceStep> d_lens_trace(const LensSpace& L, std::int64_t i) {
  std::vector<DTraceStep> steps;
  LensSpace cur = L;
  std::int64_t lbl = i;
  while (true) {
    steps.push_back({cur, lbl, d_lens(cur, lbl)});
    if (cur.is_s3()) break;
    std::int64_t p2 = cur.q, q2 = cur.p % cur.q;
    lbl = lbl % cur.q;
    cur = q2 == 0 ? LensSpace::s3() : LensSpace(p2, q2);
  }
  return steps;
}

Rational d_Lq2_closed(std::int64_t q, std::int64_t t) {
  if (q < 3 || q % 2 == 0) throw std::domain_error("d_Lq2_closed: q must be odd >= 3");
  if (t < 0 || t >= q) throw std::domain_error("d_Lq2_closed: label out of range");
  Integer num = Integer(2 * t - q - 1) * Integer(2 * t - q - 1);
  return Rational(num, Integer(8) * q) + epsilon(t);
}

std::int64_t conjugate(const LensSpace& L, std::int64_t i) {
  if (i < 0 || i >= L.p) throw std::domain_error("conjugate: label out of range");
  return pos_mod(L.p + L.q - 1 - i, L.p);
}

std::vector<std::int64_t> self_conjugate_labels(const LensSpace& L) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < L.p; ++i)
    if (conjugate(L, i) == i) out.push_back(i);
  return out;
}

std::int64_t self_conjugate_label_odd(std::int64_t a, std::int64_t b) {
  if (a % 2 == 0) throw std::domain_error("self_conjugate_label_odd: even order");
  // solve 2i = a + b - 1 (mod a); (a+1)/2 inverts 2 mod a
  std::int64_t rhs = pos_mod(a + b - 1, a);
  return static_cast<std::int64_t>((__int128(rhs) * ((a + 1) / 2)) % a);
}

DTable::DTable(const LensSpace& L) : space_(L) {
  d_.reserve(static_cast<size_t>(L.p));
  for (std::int64_t i = 0; i < L.p; ++i) d_.push_back(d_lens(L, i));
}

}  // namespace surgery::lens
