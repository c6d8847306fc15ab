#pragma once

#include <cstdint>
#include <vector>

#include "surgery/rational.hpp"

namespace surgery::plumbing {

enum class Framing { positive, negative };

/// Characteristic covector K for a form Q: K_i = Q_ii (mod 2) for all i.
struct CharVector {
  std::vector<Integer> K;
  friend bool operator==(const CharVector&, const CharVector&) = default;
};

/// One of the two negative-definite star-shaped intersection forms: three
/// (-2)-chains of lengths m-k-1, p-k-1, k-1 around a -3 hub (positive
/// framing), or (-2)-chains of lengths k-1, p-k-1 plus a single m-k vertex
/// around a -2 hub (negative framing). |det Q| = |pm - k^2|.
struct PlumbingForm {
  int n = 0;
  std::vector<std::vector<Integer>> Q;
  Integer det;
  Framing kind = Framing::positive;
  std::int64_t p = 0, m = 0, k = 0;
  // star layout: legs listed from the far end to the hub-adjacent vertex
  std::vector<std::vector<int>> legs;
  int hub = 0;
};

/// Builds the intersection form. Preconditions: positive framing needs
/// m-k >= 3, k >= 2; negative framing needs k-m >= 3, m < 0, k >= 2;
/// both need 0 < k < p and pm - k^2 != 0.
PlumbingForm intersection_form(std::int64_t p, std::int64_t m, std::int64_t k, Framing f);

/// Representatives of Char(Q) / 2Q(Z^n) computed through the Smith normal
/// form of Q; exactly |det Q| cosets, each representative reduced into the
/// box Q_ii <= K_i <= -Q_ii.
std::vector<CharVector> spin_c_cosets(const PlumbingForm& f);

/// True iff K and K' are characteristic and differ by an element of 2Q(Z^n).
bool same_coset(const PlumbingForm& f, const CharVector& a, const CharVector& b);

/// d(Y, t) = max over the coset of K of (K^T Q^{-1} K + n)/4.
/// Every global maximizer lies in the box Q_ii <= K_i <= -Q_ii (a move by
/// +-2Qe_i changes K^2 by 4(+-K_i + Q_ii), so outside the box some move
/// strictly improves); the exact maximum over box-and-coset is found by
/// dynamic programming along the star. box_margin widens the box by that
/// many lattice steps on each side for validation runs.
Rational d_plumbing(const PlumbingForm& f, const CharVector& coset_rep,
                    int box_margin = 0);

/// The closed forms of the two propositions, selected by framing and the
/// parity of k; s in {0,1,2,3}:
///   pos, k odd:  (m-4s-2)/4    + s^2 p/(pm-k^2)
///   pos, k even: (p+m-2k-4s-2)/4 + s^2 p/(pm-k^2)
///   neg, k odd:  (m+4s)/4      + s^2 p/(pm-k^2)
///   neg, k even: (p+m-2k+4s)/4 + s^2 p/(pm-k^2)
Rational d_closed_form(std::int64_t p, std::int64_t m, std::int64_t k, int s, Framing f);

/// G_s = -1 + (2s+1)p/(pm-k^2) (positive) or 1 + (2s+1)p/(pm-k^2)
/// (negative); s in {0,1,2}. Equals d_closed_form(s+1) - d_closed_form(s).
Rational g_sequence(std::int64_t p, std::int64_t m, std::int64_t k, int s, Framing f);

/// The explicit maximizer vectors listed in the propositions; the vector for
/// step s represents the coset of t_M + s * i_*PD[mu].
CharVector paper_maximizer(std::int64_t p, std::int64_t m, std::int64_t k, Framing f, int s);

/// Relaxed evaluation of the same four closed forms keyed only on the sign
/// of pm - k^2 and the parity of k, with no regime precondition. The
/// obstruction engine consumes this for every non-lens candidate.
Rational d_closed_form_unchecked(std::int64_t p, std::int64_t m, std::int64_t k, int s);

}  // namespace surgery::plumbing
