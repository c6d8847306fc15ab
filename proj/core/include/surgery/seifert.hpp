#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surgery/lens.hpp"
#include "surgery/rational.hpp"

namespace surgery::seifert {

/// One Seifert fiber (alpha, beta), alpha != 0, gcd(alpha, beta) = 1.
struct Fiber {
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  friend bool operator==(const Fiber&, const Fiber&) = default;
};

/// Genus-0 Seifert fibration M(0,0; beta_1/alpha_1, ..., beta_n/alpha_n).
/// The Euler number sum(beta_i/alpha_i) and the multiset of beta_i/alpha_i
/// mod 1 are preserved by every normalization move.
struct SeifertFibration {
  std::vector<Fiber> fibers;

  Rational euler() const;

  /// Moves beta_i by t*alpha_i and compensates beta_j by -t*alpha_j,
  /// leaving the manifold (and euler()) unchanged.
  void transfer(size_t i, size_t j, std::int64_t t);

  /// Standard form: every exceptional fiber with 0 < beta < alpha, plus the
  /// integer part e0 carried separately. Same manifold, euler preserved.
  struct NormalForm {
    std::int64_t e0 = 0;
    std::vector<Fiber> fibers;  // 0 < beta < alpha for each
  };
  NormalForm normal_form() const;

  std::string str() const;
};

/// Y_gamma(K') for the simple knot K' = K(p,1,k) with slope m*mu + lambda:
/// the fibration with fibers (k,1), (p-k,1), (m-k,1).
/// Requires 0 < k < p and m != k.
SeifertFibration surgery_on_simple_knot(std::int64_t p, std::int64_t k, std::int64_t m);

/// Recognizes the fibration as an (oriented) lens space when at most two
/// exceptional fibers remain after absorbing the |alpha| = 1 fibers.
/// Returns the presentation the reduction produces (labels of downstream
/// Spin^c computations refer to it); use lens::oriented_normal_form for
/// homeomorphism comparisons. Empty when three exceptional fibers remain;
/// |H1| = 0 (S^1 x S^2 type) is a domain error.
std::optional<lens::OrientedLensSpace> to_lens(const SeifertFibration& f);

/// The class i*PD[mu] of the meridian in the recognized lens space,
/// determined up to sign: the labels {j, a-j} in the returned presentation.
/// Known regimes: m-k = +-1 with k >= 2 (j = k) and k = 1, m even (j = p).
struct PdMuClass {
  lens::OrientedLensSpace presentation;
  std::int64_t self_conjugate_label = 0;  // t_M in the presentation labeling
  std::int64_t j = 0;                     // labels {j, a - j}
};
std::optional<PdMuClass> pd_mu_class(std::int64_t p, std::int64_t k, std::int64_t m);

/// The three distance-one constructions from L(p,1): slopes (m,k) = (2,1),
/// (-2,1) and, for p > 3, (2,3), yielding L(2p-1,2), L(2p+1,2), L(2p-9,2).
struct Construction {
  std::int64_t m = 0;
  std::int64_t k = 0;
  lens::OrientedLensSpace result;  // oriented normal form
};
std::vector<Construction> verify_constructions(std::int64_t p);

}  // namespace surgery::seifert
