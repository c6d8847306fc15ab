#pragma once

#include <cstdint>
#include <optional>

#include "surgery/lens.hpp"
#include "surgery/rational.hpp"

namespace surgery::casson {

/// Dedekind sum s(b,a) = sum_{k=1}^{a-1} ((k/a))((kb/a)) with the sawtooth
/// ((x)) = x - floor(x) - 1/2 away from integers, 0 at integers.
/// Requires a >= 1 and gcd(a,b) = 1.
Rational dedekind_sum(const Integer& b, const Integer& a);

/// Casson-Walker invariant of L(a,b) = -s(b,a)/2, for a > b > 0 coprime.
/// Normalized so the positively oriented Poincare sphere has lambda = 1.
Rational lambda_lens(std::int64_t a, std::int64_t b);

/// lambda(L(q,2)) closed form -5/(48q) - q/48 + 1/8 (odd q >= 1).
Rational lambda_Lq2_closed(std::int64_t q);

/// lambda(L(q,1)) closed form -1/(12q) - q/24 + 1/8.
Rational lambda_Lq1_closed(std::int64_t q);

/// lambda of the Seifert space M(0,0; 1/k, 1/(p-k), 1/(m-k)) in the
/// positive-framing closed form (valid for pm - k^2 > 0):
///   -k(p-k)(m-k)/(24(pm-k^2)) + 1/4 - (m+p-k)/(12(pm-k^2)) - (p+m-k)/24.
Rational lambda_seifert_pos(std::int64_t p, std::int64_t m, std::int64_t k);

/// Negative-framing closed form (valid for m <= 0, so k^2 - mp > 0):
///   -k(k-m)(p-k)/(24(k^2-mp)) + (m+p-k)/(12(k^2-mp)) - (m+p-k)/24.
Rational lambda_seifert_neg(std::int64_t p, std::int64_t m, std::int64_t k);

/// lambda of the surgered manifold M = M(0,0;1/k,1/(p-k),1/(m-k)), resolved
/// through the lens reductions where M is a lens space and through the
/// closed forms otherwise. Empty when no formula applies (m = 1 with k >= 4,
/// or negative framing with m >= 1 outside the lens regimes).
std::optional<Rational> lambda_surgered(std::int64_t p, std::int64_t m, std::int64_t k);

/// Which signed values of q survive the Casson-Walker comparison:
/// positive framing requires lambda(L(q,2)) >= lambda(M), negative framing
/// requires lambda(M) >= lambda(L(q,2)), where q < 0 flips the sign of
/// lambda(L(|q|,2)). When lambda(M) is not computable both signs are kept
/// and `known` is false.
struct CwSignResult {
  bool known = false;
  bool plus_ok = true;
  bool minus_ok = true;
  std::optional<Rational> lambda_M;
  Rational lambda_L;  // lambda(L(q',2)), unsigned
};
CwSignResult cw_sign_filter(std::int64_t p, std::int64_t m, std::int64_t k);

/// |q| * (lambda(L(q,2)) - lambda(M)) for the signed q. Domain error when
/// lambda(M) has no computable formula or |q| != |pm - k^2|.
Rational delta_lambda(std::int64_t p, std::int64_t m, std::int64_t k,
                      std::int64_t q_signed);

}  // namespace surgery::casson
