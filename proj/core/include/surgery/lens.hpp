#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surgery/rational.hpp"

namespace surgery::lens {

/// Lens space L(p,q): the 3-manifold obtained by p/q surgery on the unknot,
/// stored with 1 <= p and 0 < q < p, gcd(p,q) = 1. The sentinel (1,0) is S^3.
/// Spin^c structures are labeled by integers {0, ..., p-1}.
struct LensSpace {
  std::int64_t p = 1;
  std::int64_t q = 0;

  LensSpace() = default;
  LensSpace(std::int64_t p_, std::int64_t q_);

  static LensSpace s3() { return LensSpace(); }
  bool is_s3() const { return p == 1; }

  friend bool operator==(const LensSpace&, const LensSpace&) = default;
  std::string str() const;  // "L(p,q)"
};

/// A lens space together with an orientation sign (+1 canonical, -1 reversed).
/// The Spin^c labels always refer to the stored space's own labeling;
/// d(-L, i) = -d(L, i).
struct OrientedLensSpace {
  int sign = 1;
  LensSpace space;

  friend bool operator==(const OrientedLensSpace&, const OrientedLensSpace&) = default;
  std::string str() const;  // "L(p,q)" or "-L(p,q)"
};

/// Reduces arbitrary surgery parameters a/b to an oriented canonical lens
/// space: a may be negative (orientation reversal), b is reduced mod a.
/// a = 0 is a degenerate (S^1 x S^2 type) input and a domain error.
OrientedLensSpace reduce(const Integer& a, const Integer& b);

/// Oriented homeomorphism normal form: folds the orientation sign into the
/// space (L(a,b) with sign -1 becomes L(a,a-b)) and picks the smaller of
/// b and b^{-1} mod a. Two oriented lens spaces are homeomorphic by an
/// orientation-preserving map iff their normal forms are equal.
OrientedLensSpace oriented_normal_form(const OrientedLensSpace& L);
bool same_oriented(const OrientedLensSpace& A, const OrientedLensSpace& B);

/// Parity correction in the L(q,2) d-formula: 0 for odd a, -1/2 for even a.
Rational epsilon(std::int64_t a);

/// Heegaard Floer correction term d(L(p,q), i) by the recursion
///   d(L(p,q), i) = -1/4 + (2i+1-p-q)^2/(4pq) - d(L(q, p mod q), i mod q)
/// with base d(S^3) = 0. Terminates along the Euclidean algorithm on (p,q).
Rational d_lens(const LensSpace& L, std::int64_t i);

/// One recursion step per entry, outermost first: {(space, label, value)}.
struct DTraceStep {
  LensSpace space;
  std::int64_t label;
  Rational value;
};
std::vector<DTraceStep> d_lens_trace(const LensSpace& L, std::int64_t i);

/// Closed form d(L(q,2), t) = (2t-q-1)^2/(8q) + epsilon(t) for odd q >= 3.
Rational d_Lq2_closed(std::int64_t q, std::int64_t t);

/// Spin^c conjugation on labels: i -> (p + q - 1 - i) mod p.
std::int64_t conjugate(const LensSpace& L, std::int64_t i);

/// All labels fixed by conjugation. Exactly one for odd p, two for even p.
std::vector<std::int64_t> self_conjugate_labels(const LensSpace& L);

/// The unique self-conjugate label of L(a,b) for odd a.
std::int64_t self_conjugate_label_odd(std::int64_t a, std::int64_t b);

/// Precomputed table of d(L, i) for all labels. Immutable once built, so it
/// can be shared freely across threads; results are identical to d_lens.
class DTable {
 public:
  explicit DTable(const LensSpace& L);
  const LensSpace& space() const { return space_; }
  const Rational& operator[](std::int64_t i) const { return d_.at(static_cast<size_t>(i)); }

 private:
  LensSpace space_;
  std::vector<Rational> d_;
};

}  // namespace surgery::lens
