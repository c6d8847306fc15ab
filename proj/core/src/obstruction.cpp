#include "surgery/obstruction.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "surgery/casson.hpp"
#include "surgery/lens.hpp"
#include "surgery/plumbing.hpp"
#include "surgery/seifert.hpp"

namespace surgery::obstruction {

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// d(L(q',2), t) for q' odd >= 1 (0 for the q' = 1 sentinel).
Rational d_side(std::int64_t qprime, std::int64_t t) {
  if (qprime == 1) return Rational(0);
  return lens::d_Lq2_closed(qprime, t);
}

// Evaluator for d(M, t_M + s * i_*PD[mu]) on the surgered-simple-knot side.
struct MSide {
  bool lens_regime = false;
  int sign = 1;                        // orientation of the lens presentation
  std::int64_t a = 1, tM = 0, mu = 0;  // lens presentation data
  std::vector<Rational> dtab;
  std::int64_t p = 0, m = 0, k = 0;  // plumbing closed forms

  Rational d(int s) const {
    if (lens_regime) {
      if (a == 1) return Rational(0);
      Rational v = dtab[static_cast<size_t>(pos_mod(tM + static_cast<std::int64_t>(s) * mu, a))];
      return sign < 0 ? -v : v;
    }
    return plumbing::d_closed_form_unchecked(p, m, k, s);
  }
};

std::optional<MSide> build_m_side(std::int64_t p, std::int64_t m, std::int64_t k) {
  MSide ms;
  ms.p = p;
  ms.m = m;
  ms.k = k;
  if ((k == 1 && m % 2 == 0 && m != 0) || (k >= 2 && std::abs(m - k) == 1)) {
    auto pd = seifert::pd_mu_class(p, k, m);
    if (!pd) return std::nullopt;
    ms.lens_regime = true;
    ms.sign = pd->presentation.sign;
    ms.a = pd->presentation.space.p;
    ms.tM = pd->self_conjugate_label;
    ms.mu = pd->j;
    if (ms.a > 1) {
      lens::DTable tab(pd->presentation.space);
      ms.dtab.resize(static_cast<size_t>(ms.a));
      for (std::int64_t i = 0; i < ms.a; ++i) ms.dtab[static_cast<size_t>(i)] = tab[i];
    }
    return ms;
  }
  if (k >= 2 && std::abs(m - k) >= 3 && m != 1 && m != 0) {
    Integer D = Integer(p) * m - Integer(k) * k;
    if (D == 0) return std::nullopt;
    ms.lens_regime = false;
    return ms;
  }
  return std::nullopt;
}

std::string rstr(const Rational& r) { return to_string(r); }

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Refuted: return "REFUTED";
    case Verdict::Survives: return "SURVIVES";
    case Verdict::Constructed: return "CONSTRUCTED";
    case Verdict::UnknownCase4: return "UNKNOWN-CASE-4";
  }
  return "?";
}

std::pair<std::int64_t, bool> homology_filter(std::int64_t p, std::int64_t m, std::int64_t k) {
  Integer D = Integer(p) * m - Integer(k) * k;
  Integer qp = abs(D);
  std::int64_t q = qp.fits_slong_p() ? qp.get_si() : -1;
  bool pass = q > 0 && gcd3(p, k, m) == 1 && q % 2 == 1 &&
              ((m % 2 == 0) != (k % 2 == 0));
  return {q, pass};
}

bool lspace_filter(std::int64_t p, std::int64_t m, std::int64_t k) {
  if (m - k > -3) return true;
  return m == 1 || (m <= 0 && 3 * k >= p + 1);
}

std::pair<std::int64_t, Rational> h_step(std::int64_t qprime, std::int64_t t_s,
                                         std::int64_t j, bool q_negative) {
  std::int64_t t_next = pos_mod(t_s + j, qprime);
  Rational H = d_side(qprime, t_next) - d_side(qprime, t_s);
  if (q_negative) H = -H;
  return {t_next, H};
}

std::optional<int> m_side_s_max(std::int64_t p, std::int64_t m, std::int64_t k,
                                std::int64_t qprime) {
  auto ms = build_m_side(p, m, k);
  if (!ms) return std::nullopt;
  return ms->lens_regime ? static_cast<int>(qprime) : 3;
}

namespace {

std::vector<Rational> n_sequence_impl(const MSide& ms, const SurgeryCandidate& c,
                                      int s_max) {
  std::vector<Rational> N;
  N.reserve(static_cast<size_t>(s_max) + 1);
  std::int64_t t = pos_mod((c.qprime + 1) / 2, c.qprime);
  std::int64_t j = *c.mu_branch;
  for (int s = 0; s <= s_max; ++s) {
    Rational dl = d_side(c.qprime, t);
    if (c.q_signed < 0) dl = -dl;
    Rational twoN = ms.d(s) - dl;
    if (c.framing < 0) twoN = -twoN;
    N.push_back(twoN / Rational(2));
    t = pos_mod(t + j, c.qprime);
  }
  return N;
}

}  // namespace

std::vector<Rational> n_sequence(const SurgeryCandidate& c, int s_max) {
  if (!c.mu_branch) throw std::domain_error("n_sequence: mu_branch not fixed");
  auto ms = build_m_side(c.p, c.m, c.k);
  if (!ms)
    throw std::domain_error("n_sequence: insufficient data (no d(M) formula in this regime)");
  if (!ms->lens_regime && s_max > 3)
    throw std::domain_error("n_sequence: plumbing regime provides s <= 3 only");
  return n_sequence_impl(*ms, c, s_max);
}

ConstraintCheck constraint_check(const std::vector<Rational>& N, bool full_orbit) {
  ConstraintCheck out;
  size_t n = N.size();
  std::vector<std::optional<Integer>> v(n);
  for (size_t s = 0; s < n; ++s) {
    if (is_nonneg_integer(N[s])) {
      v[s] = N[s].num();
    } else {
      out.violations.push_back({"integrality", static_cast<int>(s),
                                "2N[" + std::to_string(s) + "]=" + rstr(N[s] * Rational(2))});
    }
  }
  for (size_t s = 0; s + 1 < n; ++s) {
    if (!v[s] || !v[s + 1]) continue;
    const Integer& a = *v[s];
    const Integer& b = *v[s + 1];
    bool ok = true;
    if (a >= 2 && !(b == a || b == a - 1)) ok = false;
    if (b >= 2 && !(a == b || a == b - 1)) ok = false;
    if (!ok)
      out.violations.push_back({"step", static_cast<int>(s),
                                "2N[" + std::to_string(s) + "]=" + Integer(2 * a).get_str() +
                                    " 2N[" + std::to_string(s + 1) + "]=" +
                                    Integer(2 * b).get_str()});
  }
  // Corollary: some N >= 3 forces the whole orbit constant. The available
  // window is the whole orbit in the lens regimes and s <= 3 otherwise;
  // either way the constraint applies to every computed value.
  std::optional<size_t> big;
  for (size_t s = 0; s < n; ++s)
    if (v[s] && *v[s] >= 3) { big = s; break; }
  if (big) {
    for (size_t s = 0; s < n; ++s) {
      if (v[s] && *v[s] != *v[*big]) {
        out.violations.push_back({"corollary", static_cast<int>(*big),
                                  "N[" + std::to_string(*big) + "]=" + v[*big]->get_str() +
                                      " N[" + std::to_string(s) + "]=" + v[s]->get_str()});
        break;
      }
    }
  }
  (void)full_orbit;
  out.pass = out.violations.empty();
  return out;
}

ObstructionReport check_candidate(std::int64_t p, std::int64_t q_signed,
                                  std::int64_t m, std::int64_t k,
                                  const Toggles& toggles) {
  if (p <= 1 || p % 2 == 0) throw std::domain_error("check_candidate: p must be odd > 1");
  if (k < 1 || 2 * k > p) throw std::domain_error("check_candidate: need k in [1, p/2]");
  Integer D = Integer(p) * m - Integer(k) * k;
  if (abs(D) != abs(Integer(q_signed)))
    throw std::domain_error("check_candidate: |q| != |pm - k^2|");

  ObstructionReport rep;
  rep.candidate.p = p;
  rep.candidate.m = m;
  rep.candidate.k = k;
  rep.candidate.q_signed = q_signed;
  rep.candidate.framing = D > 0 ? 1 : -1;
  auto [qp, hpass] = homology_filter(p, m, k);
  rep.candidate.qprime = qp;

  {
    std::ostringstream w;
    w << "q'=" << qp << " gcd=" << gcd3(p, k, m).get_str() << " parity="
      << (((m % 2 == 0) != (k % 2 == 0)) ? "opposite" : "same");
    rep.filters.push_back({"homology", hpass, w.str()});
  }
  if (!hpass) {
    rep.verdict = Verdict::Refuted;
    rep.reason = "homology";
    return rep;
  }

  // Construction: the simple-knot surgery itself realizes L(q,2).
  try {
    auto L = seifert::to_lens(seifert::surgery_on_simple_knot(p, k, m));
    if (L) {
      lens::OrientedLensSpace target{q_signed < 0 ? -1 : 1,
                                     qp == 1 ? lens::LensSpace::s3()
                                             : lens::LensSpace(qp, 2 % qp)};
      if (qp > 2 && lens::same_oriented(*L, target)) {
        rep.filters.push_back({"construction", true,
                               "Y_gamma(K') = " + lens::oriented_normal_form(*L).str()});
        rep.verdict = Verdict::Constructed;
        rep.reason = "simple-knot construction";
        return rep;
      }
    }
  } catch (const std::domain_error&) {
    // degenerate reduction: not a construction
  }

  if (m == 1 && k >= 4) {
    rep.filters.push_back({"case-4", true, "|q|=|p-k^2| with m=1"});
    rep.verdict = Verdict::UnknownCase4;
    rep.reason = "case-4 (neither excluded nor constructed)";
    return rep;
  }

  {
    bool lpass = lspace_filter(p, m, k);
    rep.filters.push_back({"lspace", lpass,
                           m - k > -3 ? "vacuous (m-k > -3)" : "m-k <= -3 bound"});
    // Recorded only: the Table itself keeps candidates failing this bound.
  }

  {
    auto cw = casson::cw_sign_filter(p, m, k);
    bool admissible = q_signed > 0 ? cw.plus_ok : cw.minus_ok;
    std::ostringstream w;
    if (cw.known)
      w << "lambda(M)=" << rstr(*cw.lambda_M) << " lambda(L(q'|2))=" << rstr(cw.lambda_L);
    else
      w << "lambda(M) not computable in this regime; both signs kept";
    rep.filters.push_back({"cw-sign", !cw.known || admissible, w.str()});
    if (cw.known && !admissible) {
      rep.verdict = Verdict::Refuted;
      rep.reason = "cw-sign";
      return rep;
    }
    if (cw.known && toggles.cw_integrality) {
      Rational delta = casson::delta_lambda(p, m, k, q_signed);
      Rational scaled = rep.candidate.framing < 0 ? -delta : delta;
      bool ipass = is_nonneg_integer(scaled);
      rep.filters.push_back({"cw-integrality", ipass,
                             "delta_lambda=" + rstr(delta) + " framing-adjusted=" + rstr(scaled)});
      if (!ipass) {
        rep.verdict = Verdict::Refuted;
        rep.reason = "cw-integrality";
        return rep;
      }
    }
  }

  auto ms = build_m_side(p, m, k);
  if (!ms) {
    rep.filters.push_back({"n-sequence", true, "insufficient d(M) data; not obstructed"});
    rep.verdict = Verdict::Survives;
    rep.reason = "insufficient d(M) data";
    return rep;
  }
  rep.full_orbit = ms->lens_regime;
  rep.s_max = ms->lens_regime ? static_cast<int>(qp) : 3;

  SurgeryCandidate c = rep.candidate;
  for (std::int64_t j = 1; j < qp; j += 2) {
    c.mu_branch = j;
    BranchResult br;
    br.j = j;
    auto N = n_sequence_impl(*ms, c, rep.s_max);
    br.prefix_integral = true;
    for (int s = 0; s <= 3 && s <= rep.s_max; ++s) {
      if (s < static_cast<int>(N.size()) && is_nonneg_integer(N[static_cast<size_t>(s)]))
        br.prefix[static_cast<size_t>(s)] = N[static_cast<size_t>(s)].num();
      else
        br.prefix_integral = false;
    }
    auto cc = constraint_check(N, rep.full_orbit);
    br.pass = cc.pass;
    br.violations = std::move(cc.violations);
    if (br.prefix_integral) br.N = std::move(N);
    rep.branches.push_back(std::move(br));
  }

  const BranchResult* winner = nullptr;
  for (const auto& br : rep.branches)
    if (br.pass && !winner) winner = &br;
  const BranchResult* representative = winner;
  if (!representative) {
    for (const auto& br : rep.branches)
      if (br.prefix_integral && !representative) representative = &br;
    if (!representative && !rep.branches.empty()) representative = &rep.branches.front();
  }

  if (representative && !representative->N.empty()) {
    std::int64_t t = pos_mod((qp + 1) / 2, qp);
    for (int s = 0; s < static_cast<int>(representative->N.size()); ++s) {
      rep.n_sequence.emplace_back(s, t, representative->N[static_cast<size_t>(s)]);
      t = pos_mod(t + representative->j, qp);
    }
  }

  if (winner) {
    rep.verdict = Verdict::Survives;
    rep.winning_j = winner->j;
    rep.reason = "j=" + std::to_string(winner->j);
  } else {
    rep.verdict = Verdict::Refuted;
    if (representative && !representative->violations.empty()) {
      const auto& v = representative->violations.front();
      rep.reason = "n-sequence " + v.kind + " " + v.detail + " j=" +
                   std::to_string(representative->j);
    } else {
      rep.reason = "n-sequence: no admissible branch";
    }
  }
  return rep;
}

std::vector<ObstructionReport> enumerate_candidates(std::int64_t p_max,
                                                    std::int64_t q_bound,
                                                    const Toggles& toggles,
                                                    int jobs) {
  struct Key {
    std::int64_t p, q, m, k;
  };
  std::vector<Key> keys;
  for (std::int64_t p = 3; p <= p_max; p += 2) {
    for (std::int64_t k = 1; 2 * k <= p; ++k) {
      std::int64_t k2 = k * k;
      std::int64_t m_lo = (k2 - q_bound) / p - 2;
      std::int64_t m_hi = (k2 + q_bound) / p + 2;
      for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        Integer D = Integer(p) * m - k2;
        Integer qpz = abs(D);
        if (qpz <= 7 || qpz > q_bound) continue;
        std::int64_t qp = qpz.get_si();
        keys.push_back({p, -qp, m, k});
        keys.push_back({p, qp, m, k});
      }
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return std::tie(a.p, a.q, a.m, a.k) < std::tie(b.p, b.q, b.m, b.k);
  });

  std::vector<ObstructionReport> out(keys.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < keys.size(); ++i)
      out[i] = check_candidate(keys[i].p, keys[i].q, keys[i].m, keys[i].k, toggles);
    return out;
  }
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= keys.size()) break;
      out[i] = check_candidate(keys[i].p, keys[i].q, keys[i].m, keys[i].k, toggles);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace surgery::obstruction
