#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "surgery/lens.hpp"
#include "surgery/obstruction.hpp"
#include "surgery/report.hpp"

using namespace surgery;
using namespace surgery::obstruction;

namespace {

const BranchResult* find_branch(const ObstructionReport& rep, std::int64_t j) {
  for (const auto& b : rep.branches)
    if (b.j == j) return &b;
  return nullptr;
}

bool has_violation(const BranchResult& b, const std::string& kind) {
  for (const auto& v : b.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("homology filter") {
  CHECK(homology_filter(3, 4, 1) == std::pair<std::int64_t, bool>{11, true});
  CHECK(homology_filter(7, 2, 3) == std::pair<std::int64_t, bool>{5, true});
  CHECK(homology_filter(9, 3, 3) == std::pair<std::int64_t, bool>{18, false});
  CHECK_FALSE(homology_filter(9, 1, 3).second);  // q' = 0
}

TEST_CASE("lspace filter") {
  CHECK(lspace_filter(11, 1, 5));
  CHECK(lspace_filter(11, 0, 4));
  CHECK_FALSE(lspace_filter(11, 0, 3));
  CHECK(lspace_filter(11, 4, 3));  // vacuous: m - k > -3
}

TEST_CASE("h_step") {
  auto [t1, H] = h_step(29, 20, 26, true);
  CHECK(t1 == 17);
  CHECK(H == -(lens::d_Lq2_closed(29, 17) - lens::d_Lq2_closed(29, 20)));
  CHECK(lens::d_Lq2_closed(29, 20) == rat(-2, 29));
  CHECK(lens::d_Lq2_closed(29, 17) == rat(2, 29));

  auto [t2, H0] = h_step(29, 20, 0, false);
  CHECK(t2 == 20);
  CHECK(H0 == Rational(0));

  // orbit with q' = 37, t0 = 19, j = 1 hits the exclusion labels at s = 15, 16
  std::int64_t t = 19;
  for (int s = 0; s < 15; ++s) t = h_step(37, t, 1, true).first;
  CHECK(t == 34);
  CHECK(lens::d_Lq2_closed(37, 34) == rat(94, 37));
  t = h_step(37, t, 1, true).first;
  CHECK(t == 35);
  CHECK(lens::d_Lq2_closed(37, 35) == rat(128, 37));
}

TEST_CASE("n_sequence frozen table prefixes") {
  SurgeryCandidate c;
  c.p = 3; c.m = 4; c.k = 1; c.q_signed = -11; c.qprime = 11; c.framing = 1;
  c.mu_branch = 7;
  auto N = n_sequence(c, 3);
  CHECK(N == std::vector<Rational>{0, 0, 0, 0});

  c = {};
  c.p = 7; c.m = -5; c.k = 2; c.q_signed = 39; c.qprime = 39; c.framing = -1;
  c.mu_branch = 31;
  N = n_sequence(c, 3);
  CHECK(N == std::vector<Rational>{0, 0, 1, 1});

  c = {};
  c.p = 25; c.m = 4; c.k = 7; c.q_signed = -51; c.qprime = 51; c.framing = 1;
  c.mu_branch = 35;
  N = n_sequence(c, 3);
  CHECK(N == std::vector<Rational>{0, 1, 2, 1});

  c.mu_branch.reset();
  CHECK_THROWS_AS(n_sequence(c, 3), std::domain_error);
  c.mu_branch = 35;
  CHECK_THROWS_AS(n_sequence(c, 5), std::domain_error);  // plumbing regime: s <= 3
}

TEST_CASE("n_sequence reproduces the negative-framing parity exclusion") {
  // m = -2, k = 1: q' = 2p+1, d(M, t_M) = -1/2 vs d(L(q,2), t_0) = 1/2
  SurgeryCandidate c;
  c.p = 7; c.m = -2; c.k = 1; c.q_signed = -15; c.qprime = 15; c.framing = -1;
  c.mu_branch = 1;
  auto N = n_sequence(c, 1);
  CHECK(N[0] * Rational(2) == Rational(1));  // 2N_0 = 1: not an integer N_0
  CHECK(m_side_s_max(7, -2, 1, 15) == 15);
}

TEST_CASE("m_side availability") {
  CHECK(m_side_s_max(25, 4, 7, 51) == 3);         // plumbing closed forms
  CHECK(m_side_s_max(9, 4, 3, 27) == 27);         // lens regime
  CHECK_FALSE(m_side_s_max(11, 1, 4, 5));         // case-4 regime: no data
  CHECK_FALSE(m_side_s_max(13, 0, 5, 25));        // m = 0: no data
}

TEST_CASE("constraint_check") {
  auto ok = constraint_check({0, 0, 0, 0}, false);
  CHECK(ok.pass);
  auto jump = constraint_check({0, 0, 0, 2}, false);  // N jumps 0 -> 2
  CHECK_FALSE(jump.pass);
  CHECK(jump.violations.front().kind == "step");
  auto drop = constraint_check({2, 0, 0, 0}, false);  // N drops 2 -> 0
  CHECK_FALSE(drop.pass);
  auto noninteger = constraint_check({rat(1, 2), 0, 0, 0}, false);
  CHECK_FALSE(noninteger.pass);
  CHECK(noninteger.violations.front().kind == "integrality");
  auto negative = constraint_check({rat(-1, 1), 0, 0, 0}, false);
  CHECK_FALSE(negative.pass);
  // corollary: a 3 forces the whole orbit constant
  std::vector<Rational> orbit(16, Rational(3));
  orbit[0] = Rational(0);
  orbit[1] = Rational(1);
  orbit[2] = Rational(2);
  auto cor = constraint_check(orbit, true);
  CHECK_FALSE(cor.pass);
  bool found = false;
  for (const auto& v : cor.violations) found |= v.kind == "corollary";
  CHECK(found);
}

TEST_CASE("check_candidate: corollary exclusion of (19,-37,2,1)") {
  auto rep = check_candidate(19, -37, 2, 1);
  CHECK(rep.verdict == Verdict::Refuted);
  const auto* b = find_branch(rep, 31);
  REQUIRE(b);
  REQUIRE(b->prefix_integral);
  CHECK(b->prefix == std::array<Integer, 4>{0, 0, 1, 2});
  REQUIRE(b->N.size() >= 16);
  CHECK(b->N[0] == Rational(0));
  CHECK(b->N[15] == Rational(3));  // 2N_15 = 6 against N_0 = 0
  CHECK(has_violation(*b, "corollary"));
}

TEST_CASE("check_candidate: step exclusions") {
  auto rep = check_candidate(3, -29, 10, 1);
  CHECK(rep.verdict == Verdict::Refuted);
  const auto* b = find_branch(rep, 9);
  REQUIRE(b);
  CHECK(b->prefix == std::array<Integer, 4>{1, 1, 1, 0});
  CHECK(b->N[7] == Rational(0));
  CHECK(b->N[8] == Rational(2));  // 2N_7 = 0, 2N_8 = 4
  CHECK(has_violation(*b, "step"));

  rep = check_candidate(25, -41, 2, 3);
  CHECK(rep.verdict == Verdict::Refuted);
  b = find_branch(rep, 27);
  REQUIRE(b);
  CHECK(b->N[3] == Rational(0));
  CHECK(b->N[4] == Rational(2));  // 2N_3 = 0, 2N_4 = 4
}

TEST_CASE("check_candidate: constructions and survivors") {
  for (std::int64_t p : {5, 7, 11, 31}) {
    CHECK(check_candidate(p, 2 * p - 1, 2, 1).verdict == Verdict::Constructed);
    CHECK(check_candidate(p, 2 * p + 1, -2, 1).verdict == Verdict::Constructed);
    if (2 * p - 9 > 7)
      CHECK(check_candidate(p, 2 * p - 9, 2, 3).verdict == Verdict::Constructed);
  }
  CHECK(check_candidate(9, -11, 3, 4).verdict == Verdict::Survives);
  CHECK(check_candidate(25, 9, 1, 4).verdict == Verdict::UnknownCase4);
  CHECK(check_candidate(13, -9, 0, 3).verdict == Verdict::Refuted);  // cw-sign
}

TEST_CASE("q' = 0 is rejected before any d computation") {
  auto rep = check_candidate(9, 0, 1, 3);
  CHECK(rep.verdict == Verdict::Refuted);
  CHECK(rep.reason == "homology");
}

TEST_CASE("formula (A): 2N_{s+1} - 2N_s in the proposition regimes") {
  // positive framing (q < 0) and negative framing (q > 0) both satisfy
  // 2N_{s+1}-2N_s = eps(t_{s+1})-eps(t_s)
  //                 + (t_{s+1}-t_s)(t_{s+1}+t_s-q'-1)/(2q') - 1 + (2s+1)p/q'.
  auto check_formula = [](std::int64_t p, std::int64_t m, std::int64_t k,
                          std::int64_t q_signed) {
    std::int64_t qp = std::llabs(q_signed);
    SurgeryCandidate c;
    c.p = p; c.m = m; c.k = k; c.q_signed = q_signed; c.qprime = qp;
    c.framing = (Integer(p) * m - Integer(k) * k) > 0 ? 1 : -1;
    for (std::int64_t j = 1; j < qp; j += 2) {
      c.mu_branch = j;
      auto N = n_sequence(c, 3);
      std::int64_t t = (qp + 1) / 2;
      for (int s = 0; s <= 2; ++s) {
        std::int64_t tn = (t + j) % qp;
        Rational rhs = lens::epsilon(tn) - lens::epsilon(t) +
                       Rational(Integer(tn - t) * (tn + t - qp - 1), 2 * qp) -
                       Rational(1) + Rational(Integer(2 * s + 1) * p, qp);
        CHECK((N[s + 1] - N[s]) * Rational(2) == rhs);
        t = tn;
      }
    }
  };
  check_formula(7, 7, 2, -45);   // positive framing, plumbing regime
  check_formula(9, 8, 3, -63);   // positive framing, k odd
  check_formula(5, -3, 2, 19);   // negative framing
  check_formula(7, -5, 2, 39);   // negative framing
  check_formula(9, 4, 3, -27);   // lens regime, m-k = 1
  check_formula(3, 4, 1, -11);   // lens regime, k = 1
}

TEST_CASE("branch symmetry: j and q'-j give the same N sequence") {
  SurgeryCandidate c;
  c.p = 9; c.m = 4; c.k = 3; c.q_signed = -27; c.qprime = 27; c.framing = 1;
  for (std::int64_t j = 1; j < 27; ++j) {
    c.mu_branch = j;
    auto a = n_sequence(c, 27);
    c.mu_branch = 27 - j;
    auto b = n_sequence(c, 27);
    CHECK(a == b);
  }
}

TEST_CASE("refutation witnesses recompute") {
  auto rep = check_candidate(3, -35, 12, 1);
  CHECK(rep.verdict == Verdict::Refuted);
  const auto* b = find_branch(rep, 27);
  REQUIRE(b);
  CHECK(b->prefix == std::array<Integer, 4>{1, 1, 2, 1});
  // recompute the stored sequence independently and reproduce the failure
  SurgeryCandidate c = rep.candidate;
  c.mu_branch = 27;
  auto N = n_sequence(c, rep.s_max);
  CHECK(N == b->N);
  CHECK(N[10] == Rational(1));
  CHECK(N[11] == Rational(3));  // 2N_10 = 2, 2N_11 = 6
}

TEST_CASE("enumerate: ordering, determinism, table rows") {
  auto reps = enumerate_candidates(9, 30);
  REQUIRE(!reps.empty());
  for (size_t i = 1; i < reps.size(); ++i) {
    auto key = [](const ObstructionReport& r) {
      return std::tuple(r.candidate.p, r.candidate.q_signed, r.candidate.m,
                        r.candidate.k);
    };
    CHECK(key(reps[i - 1]) < key(reps[i]));
  }
  // deterministic, also under the worker pool
  auto reps2 = enumerate_candidates(9, 30, {}, 4);
  REQUIRE(reps.size() == reps2.size());
  for (size_t i = 0; i < reps.size(); ++i)
    CHECK(report::to_json_line(reps[i]) == report::to_json_line(reps2[i]));

  std::map<std::pair<std::int64_t, std::int64_t>, Verdict> best;
  std::set<std::string> rows;
  for (const auto& r : reps)
    for (const auto& row : report::to_csv_rows(r)) rows.insert(row);
  CHECK(rows.count("9,-11,3,4,0,0,0,1,SURVIVES,j=9") == 1);
  CHECK(rows.count("9,-27,4,3,0,1,0,1,SURVIVES,j=15") == 1);
  CHECK(rows.count("9,17,2,1,,,,,CONSTRUCTED,simple-knot construction") == 1);
}

TEST_CASE("json round trip is lossless") {
  for (auto rep : {check_candidate(19, -37, 2, 1), check_candidate(7, 13, 2, 1),
                   check_candidate(25, 9, 1, 4), check_candidate(9, -27, 4, 3)}) {
    auto line = report::to_json_line(rep);
    auto back = report::from_json_line(line);
    CHECK(report::to_json_line(back) == line);
    auto rows1 = report::to_csv_rows(rep);
    auto rows2 = report::to_csv_rows(back);
    CHECK(rows1 == rows2);
  }
}

TEST_CASE("cw-integrality toggle changes (9,-9,2,3) only through the filter") {
  Toggles off;
  off.cw_integrality = false;
  auto with_filter = check_candidate(9, -9, 2, 3);
  CHECK(with_filter.verdict == Verdict::Refuted);
  CHECK(with_filter.reason == "cw-integrality");
  auto without = check_candidate(9, -9, 2, 3, off);
  CHECK(without.verdict == Verdict::Survives);  // the all-zero j=3 orbit
}
