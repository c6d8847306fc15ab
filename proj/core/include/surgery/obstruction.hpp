#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "surgery/rational.hpp"

namespace surgery::obstruction {

struct Toggles {
  bool cw_integrality = true;  // the Casson-Walker integrality filter
};

enum class Verdict { Refuted, Survives, Constructed, UnknownCase4 };
std::string verdict_name(Verdict v);

/// A candidate distance-one surgery L(p,1) -> L(q,2) along a knot with
/// winding number k and slope m*mu + lambda.
struct SurgeryCandidate {
  std::int64_t p = 0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t q_signed = 0;
  std::int64_t qprime = 0;  // |pm - k^2| = |q|
  int framing = 1;          // sign of pm - k^2
  std::optional<std::int64_t> mu_branch;  // assumed i*PD[mu] label in L(q,2)
};

struct FilterResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Violation {
  std::string kind;  // "integrality" | "step" | "corollary"
  int s = 0;
  std::string detail;
};

/// Outcome of one mu-branch j: the N_s sequence and its constraint status.
struct BranchResult {
  std::int64_t j = 0;
  bool prefix_integral = false;            // N_0..N_3 all nonneg integers
  std::array<Integer, 4> prefix{};         // meaningful when prefix_integral
  bool pass = false;
  std::vector<Violation> violations;
  std::vector<Rational> N;  // full sequence for prefix-integral branches
};

struct ObstructionReport {
  SurgeryCandidate candidate;
  std::vector<FilterResult> filters;
  bool full_orbit = false;  // lens regime: s over the whole orbit
  int s_max = 3;
  std::vector<BranchResult> branches;
  Verdict verdict = Verdict::Refuted;
  std::string reason;
  std::optional<std::int64_t> winning_j;
  // (s, t_s, N_s) of the winning branch (or most advanced refuted branch)
  std::vector<std::tuple<int, std::int64_t, Rational>> n_sequence;
};

/// q' = |pm - k^2|; passes iff gcd(p,k,m) = 1, q' odd, and m,k have
/// opposite parity (the last two are equivalent for odd p).
std::pair<std::int64_t, bool> homology_filter(std::int64_t p, std::int64_t m, std::int64_t k);

/// The L-space constraint for m-k <= -3: m = 1 or (m <= 0 and 3k >= p+1).
/// Candidates with m-k > -3 pass vacuously.
bool lspace_filter(std::int64_t p, std::int64_t m, std::int64_t k);

/// One step along the Spin^c orbit of L(q,2): t_{s+1} = (t_s + j) mod q' and
/// H_s = d(L(q,2), t_{s+1}) - d(L(q,2), t_s), with the orientation sign
/// folded in (q < 0 negates the closed-form d values).
std::pair<std::int64_t, Rational> h_step(std::int64_t qprime, std::int64_t t_s,
                                         std::int64_t j, bool q_negative);

/// N_s for s = 0..s_max along the branch c.mu_branch (required):
///   2 N_s = sign(pm-k^2) * (d(M, t_M + s PD[mu]) - d(L(q,2), t_s)).
/// Throws when no d(M) data exists for the candidate's regime.
std::vector<Rational> n_sequence(const SurgeryCandidate& c, int s_max);

/// Largest s for which d(M, t_M + s PD[mu]) is computable: q' for the lens
/// regimes (full orbit), 3 for the plumbing closed forms. Empty when no
/// data exists (m = 1 with k >= 4, or m = 0 with k >= 3).
std::optional<int> m_side_s_max(std::int64_t p, std::int64_t m, std::int64_t k,
                                std::int64_t qprime);

struct ConstraintCheck {
  bool pass = true;
  std::vector<Violation> violations;
};

/// The surgery-formula constraints on a finite window of the orbit:
/// every N_s a non-negative integer; if N_s >= 2 its orbit neighbors lie in
/// {N_s, N_s - 1}; if any N_s >= 3 the whole available orbit is constant.
ConstraintCheck constraint_check(const std::vector<Rational>& N, bool full_orbit);

/// Runs the whole pipeline on one (p, q, m, k).
ObstructionReport check_candidate(std::int64_t p, std::int64_t q_signed,
                                  std::int64_t m, std::int64_t k,
                                  const Toggles& toggles = {});

/// All candidates with odd p in (1, p_max], k in [1, p/2], |pm - k^2| in
/// (7, q_bound], both signs of q; reports sorted by (p, q, m, k).
std::vector<ObstructionReport> enumerate_candidates(std::int64_t p_max,
                                                    std::int64_t q_bound,
                                                    const Toggles& toggles = {},
                                                    int jobs = 1);

}  // namespace surgery::obstruction
