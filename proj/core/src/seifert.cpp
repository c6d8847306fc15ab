#include "surgery/seifert.hpp"

#include <numeric>
#include <stdexcept>

namespace surgery::seifert {

Rational SeifertFibration::euler() const {
  Rational e;
  for (const auto& f : fibers) e += rat(f.beta, f.alpha);
  return e;
}

void SeifertFibration::transfer(size_t i, size_t j, std::int64_t t) {
  if (i >= fibers.size() || j >= fibers.size() || i == j)
    throw std::domain_error("transfer: bad fiber indices");
  fibers[i].beta += t * fibers[i].alpha;
  fibers[j].beta -= t * fibers[j].alpha;
}

SeifertFibration::NormalForm SeifertFibration::normal_form() const {
  NormalForm nf;
  for (Fiber f : fibers) {
    if (f.alpha < 0) {
      f.alpha = -f.alpha;
      f.beta = -f.beta;
    }
    std::int64_t t = f.beta >= 0 ? f.beta / f.alpha : -((-f.beta + f.alpha - 1) / f.alpha);
    f.beta -= t * f.alpha;
    nf.e0 += t;
    if (f.alpha == 1) continue;  // (1,0) is an ordinary fiber
    nf.fibers.push_back(f);
  }
  return nf;
}

std::string SeifertFibration::str() const {
  std::string s = "M(0,0;";
  for (size_t i = 0; i < fibers.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(fibers[i].beta) + "/" + std::to_string(fibers[i].alpha);
  }
  return s + ")";
}

SeifertFibration surgery_on_simple_knot(std::int64_t p, std::int64_t k, std::int64_t m) {
  if (!(0 < k && k < p)) throw std::domain_error("surgery_on_simple_knot: need 0 < k < p");
  if (m == k) throw std::domain_error("surgery_on_simple_knot: m = k is the longitudinal degeneration");
  return SeifertFibration{{Fiber{k, 1}, Fiber{p - k, 1}, Fiber{m - k, 1}}};
}

std::optional<lens::OrientedLensSpace> to_lens(const SeifertFibration& f) {
  // Normalize fiber signs, absorb |alpha| = 1 fibers into the first
  // exceptional one (or into a bare integer when none remains).
  std::vector<Fiber> exc;
  std::int64_t t_int = 0;
  for (Fiber fb : f.fibers) {
    if (fb.alpha == 0) throw std::domain_error("to_lens: fiber with alpha = 0");
    if (fb.alpha < 0) {
      fb.alpha = -fb.alpha;
      fb.beta = -fb.beta;
    }
    if (std::gcd(fb.alpha, fb.beta) != 1)
      throw std::domain_error("to_lens: fiber invariants not coprime");
    if (fb.alpha == 1)
      t_int += fb.beta;
    else
      exc.push_back(fb);
  }
  if (exc.size() > 2) return std::nullopt;

  if (exc.empty()) {
    // M(0; (1, t)) = -L(t, 1)
    return lens::reduce(Integer(-t_int), 1);
  }
  exc[0].beta += t_int * exc[0].alpha;
  if (exc.size() == 1) {
    // M(0; (alpha, beta)) = -L(beta, alpha)
    return lens::reduce(Integer(-exc[0].beta), exc[0].alpha);
  }
  // M(0; (a1,b1), (a2,b2)) = L(N, B) for the surgery slope
  // a1/b1 + a2/b2 = N/B (the central 0-framed curve contributes the chain).
  Integer N = Integer(exc[0].alpha) * exc[1].beta + Integer(exc[1].alpha) * exc[0].beta;
  Integer B = Integer(exc[0].beta) * exc[1].beta;
  Integer g = gcd3(N, B, 0);
  if (g == 0) throw std::domain_error("to_lens: degenerate slope");
  return lens::reduce(N / g, B / g);
}

std::optional<PdMuClass> pd_mu_class(std::int64_t p, std::int64_t k, std::int64_t m) {
  if (!(0 < k && k < p)) throw std::domain_error("pd_mu_class: need 0 < k < p");
  Integer D = Integer(p) * m - Integer(k) * k;
  if (!D.fits_slong_p()) return std::nullopt;
  std::int64_t a = std::abs(D.get_si());

  // The labels refer to the stated presentation, so it is built verbatim
  // rather than through homeomorphism canonicalization.
  auto make = [&](int sign, std::int64_t b, std::int64_t tM,
                  std::int64_t j) -> std::optional<PdMuClass> {
    PdMuClass out;
    if (a == 1) {
      out.presentation = {1, lens::LensSpace::s3()};
      return out;
    }
    out.presentation = {sign, lens::LensSpace(a, b % a)};
    out.self_conjugate_label = tM;
    out.j = j % a;
    return out;
  };

  if (k == 1 && m % 2 == 0 && m != 0) {
    // M = L(pm-1, p) (reversed orientation of L(1-pm, p) when pm < 1),
    // t_M = (p-1)/2, [mu] = +-p
    return make(D > 0 ? 1 : -1, p, (p - 1) / 2, p);
  }
  if (k >= 2 && m - k == 1) {
    // M = L(pk+p-k^2, k+1), [mu] = +-k
    return make(1, k + 1, a == 1 ? 0 : lens::self_conjugate_label_odd(a, k + 1), k);
  }
  if (k >= 2 && m - k == -1) {
    // M = L(pk-p-k^2, k-1), [mu] = +-k
    if (D < 0) return std::nullopt;  // outside the paper's p >= 2k+1 range
    return make(1, k - 1, a == 1 ? 0 : lens::self_conjugate_label_odd(a, k - 1), k);
  }
  return std::nullopt;  // unknown PD[mu] regime
}

std::vector<Construction> verify_constructions(std::int64_t p) {
  if (p <= 1 || p % 2 == 0) throw std::domain_error("verify_constructions: p must be odd > 1");
  std::vector<Construction> out;
  auto run = [&](std::int64_t m, std::int64_t k) {
    auto L = to_lens(surgery_on_simple_knot(p, k, m));
    out.push_back({m, k, lens::oriented_normal_form(*L)});
  };
  run(2, 1);
  run(-2, 1);
  if (p > 3) run(2, 3);
  return out;
}

}  // namespace surgery::seifert
