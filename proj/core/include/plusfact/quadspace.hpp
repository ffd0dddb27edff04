#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "plusfact/elt.hpp"

namespace plusfact {

/// Quadratic form Q(v) = sum_{i<=j} M(i,j) v_i v_j on F^n.
class QForm {
 public:
  QForm() = default;
  QForm(FieldPtr F, Mat upper);
  /// The standard hyperbolic form on e1,f1,...,em,fm.
  static QForm hyperbolic(FieldPtr F, int m);

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  int dim() const { return M_.n; }
  const Mat& upper() const { return M_; }

  Elt Q(const Vec& v) const;
  Elt beta(const Vec& x, const Vec& y) const;
  /// Gram matrix of beta.
  const Mat& gram() const { return G_; }
  /// Form v -> Q(v g) for linear g, in upper-triangular normal form.
  QForm pullback(const Mat& g) const;
  bool preserved_by(const GroupElt& g) const;
  bool operator==(const QForm& o) const { return M_ == o.M_; }

 private:
  FieldPtr F_;
  Mat M_;
  Mat G_;
  bool hyperbolic_ = false;
};

/// Result of a reflection decomposition of an isometry.
struct DicksonResult {
  int parity = 0;                      ///< number of reflections mod 2
  std::optional<bool> spinor_square;   ///< q odd: product of Q(w_i) is a square
  std::vector<Vec> reflections;        ///< g = r_{w_1} ... r_{w_k}
  /// Membership in Omega: parity 0 and (q odd) square spinor norm.
  bool in_omega() const { return parity == 0 && spinor_square.value_or(true); }
};

GroupElt reflection(const QForm& form, const Vec& w);
DicksonResult reflection_decomposition(const QForm& form, const GroupElt& g, uint64_t seed = 1);

/// Plus-type quadratic space of dimension 2m, basis e1,f1,...,em,fm.
class QuadSpace {
 public:
  QuadSpace(FieldPtr F, int m);

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  int m() const { return m_; }
  int dim() const { return 2 * m_; }
  const QForm& form() const { return form_; }
  const EltOps& ops() const { return ops_; }
  Elt mu() const { return mu_; }

  Vec zero() const { return Vec(2 * m_, 0); }
  Vec e(int i) const;  ///< 1-based
  Vec f(int i) const;
  Vec u() const;        ///< e1 + e2 + mu f2
  Vec u_prime() const;  ///< (1-mu^2)e1 + (mu^2-1+mu^-1)e2 + mu^2 f1 + mu^2 f2
  /// Parses sums like "e1+f1", "u", "up", "3*e2+f4" (coefficients are field indices).
  Vec parse(const std::string& s) const;
  std::string format(const Vec& v) const;

  Elt eval_Q(const Vec& v) const;
  Elt eval_beta(const Vec& x, const Vec& y) const;

  GroupElt reflection(const Vec& w) const;
  /// x -> x + beta(x,a) b - beta(x,b) a - Q(b) beta(x,a) a, for Q(a)=0, beta(a,b)=0.
  GroupElt eichler(const Vec& a, const Vec& b) const;
  DicksonResult dickson_invariant(const GroupElt& g) const;
  bool is_isometry(const GroupElt& g) const;

  enum class Coset { Omega, Complement };
  /// Isometry g with source_i^g = target_i and the requested coset of Omega.
  GroupElt witt_extend(const std::vector<std::pair<Vec, Vec>>& pairs, Coset coset, uint64_t seed = 1) const;

 private:
  FieldPtr F_;
  int m_;
  QForm form_;
  EltOps ops_;
  Elt mu_;
};

/// Rows e1,f1,...,em,fm of a standard hyperbolic basis for a plus-type form,
/// beginning with the given hyperbolic pairs. Throws if the form is not plus type.
Mat hyperbolic_frame(const QForm& form, const std::vector<std::pair<Vec, Vec>>& prefix = {}, uint64_t seed = 1);

/// Rows e1,f1,... of a symplectic basis for a nondegenerate alternating Gram matrix.
Mat symplectic_frame(const Field& F, const Mat& gram);

/// Witt index witness: dimension of a maximal totally singular subspace found greedily.
int witt_index(const QForm& form);

/// Conjugates g (natural coordinates) into the frame whose rows are P: P g P^-1.
GroupElt to_frame(const Field& F, const Mat& P, const Mat& Pinv, const GroupElt& g);

}  // namespace plusfact
