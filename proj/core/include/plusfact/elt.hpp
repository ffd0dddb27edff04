#pragma once

#include "plusfact/linalg.hpp"

namespace plusfact {

/// Semilinear map v -> (v^{phi^frob}) * A, phi the coordinate p-power map.
struct GroupElt {
  Mat A;
  int frob = 0;

  bool operator==(const GroupElt& o) const { return frob == o.frob && A == o.A; }
  bool operator!=(const GroupElt& o) const { return !(*this == o); }
  int dim() const { return A.n; }
};

/// Arithmetic of semilinear elements over a fixed field.
class EltOps {
 public:
  EltOps(FieldPtr F, int n) : F_(std::move(F)), n_(n) {}
  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  int dim() const { return n_; }

  GroupElt identity() const { return {Mat::identity(n_), 0}; }
  GroupElt linear(Mat A) const { return {std::move(A), 0}; }
  /// (A,j)(B,k) = (A^{phi^k} B, j+k mod f)
  GroupElt mul(const GroupElt& x, const GroupElt& y) const;
  GroupElt inv(const GroupElt& x) const;
  GroupElt pow(GroupElt x, uint64_t e) const;
  GroupElt conj(const GroupElt& x, const GroupElt& g) const;  // g^-1 x g
  GroupElt comm(const GroupElt& x, const GroupElt& y) const;  // x^-1 y^-1 x y
  Vec apply(const Vec& v, const GroupElt& x) const;
  bool is_identity(const GroupElt& x) const { return x.frob == 0 && x.A.is_identity(); }
  /// Scalar matrix with trivial Frobenius part.
  bool is_scalar(const GroupElt& x) const { return x.frob == 0 && mat_scalar(x.A).has_value(); }
  /// Order as a group element (bounded search).
  uint64_t order(const GroupElt& x, uint64_t limit = 1u << 24) const;

 private:
  FieldPtr F_;
  int n_;
};

}  // namespace plusfact
