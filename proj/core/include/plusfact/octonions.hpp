#pragma once

#include <vector>

#include "plusfact/grpcore.hpp"
#include "plusfact/quadspace.hpp"

namespace plusfact {

/// Split octonions in the Zorn basis: index 0 = a, 1..3 = v, 4..6 = w, 7 = b.
/// (a,v,w,b)(a',v',w',b') = (aa'+v.w', av'+b'v-w*w', a'w+bw'+v*v', bb'+w.v').
class Octonions {
 public:
  explicit Octonions(FieldPtr F);
  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }

  Vec one() const;
  Vec basis(int i) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Elt norm(const Vec& x) const;   ///< ab - v.w
  Elt trace(const Vec& x) const;  ///< a + b
  Vec conj(const Vec& x) const;   ///< (b, -v, -w, a)
  /// x^-1 = conj(x)/N(x); requires N(x) != 0.
  Vec inverse(const Vec& x) const;
  QForm norm_form() const;
  /// g (rows = images of basis vectors) preserves the product on all basis pairs.
  bool is_automorphism(const Mat& g) const;
  /// Matrix of x -> a x a^-1.
  Mat inner(const Vec& a) const;

 private:
  FieldPtr F_;
  std::vector<Vec> table_;  // products of basis pairs, 8*i+j
};

/// Induced map on trace-zero octonions modulo the identity (q even), basis v1,w1,v2,w2,v3,w3.
Mat g2_quotient(const Field& F, const Mat& g8);

struct G2Group {
  std::vector<Mat> gens8;  ///< verified automorphisms
  std::vector<Mat> gens6;  ///< induced symplectic action
  uint64_t seed = 0;
};

/// G2(q) for q even: SL_3 on (v,w), the swap (a,v,w,b) -> (b,w,v,a) and inner maps of order-3 elements, grown until
/// the order reaches q^6(q^6-1)(q^2-1).
G2Group build_G2(const FieldPtr& F, uint64_t seed = 1);

/// Handle of the 6-dimensional action.
GroupHandle g2_handle(const FieldPtr& F, const G2Group& G);

/// Quadratic form of type eps on the 6-space polarizing to the standard alternating form
/// with pairs (1,2),(3,4),(5,6).
QForm symplectic_quadratic(const FieldPtr& F, int eps);

}  // namespace plusfact
