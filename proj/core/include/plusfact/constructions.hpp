#pragma once

#include <string>
#include <vector>

#include "plusfact/grpcore.hpp"
#include "plusfact/quadspace.hpp"

namespace plusfact {

/// Generator matrices of classical groups in fixed coordinates.
namespace gens {
/// SL_n(q) on F^n.
std::vector<Mat> sl(const Field& F, int n);
/// GL_n(q) on F^n.
std::vector<Mat> gl(const Field& F, int n);
/// Sp_n(q) in the basis p1,q1,p2,q2,... with B(p_i,q_i) = 1.
std::vector<Mat> sp(const Field& F, int n);
/// Omega^+_{2m}(q) in the standard basis e1,f1,...,em,fm.
std::vector<Mat> omega_plus(const Field& F, int m);
/// SU_{2l}(q) on GF(q^2)^{2l}, Hermitian form with beta(E_i,F_i) = 1, basis E1,F1,...
std::vector<Mat> su_even(const SubfieldEmbedding& emb, int l);
}  // namespace gens

/// U-block A, W-block A^{-T}: the element of T induced by A in SL(U).
Mat t_element(const Field& F, const Mat& A);

/// GF(q^b)-matrices as GF(q)-matrices, basis 1, z, ..., z^{b-1} per coordinate with z the
/// primitive element of the big field. Coordinate k*b+i carries z^i in slot k.
class ScalarRestriction {
 public:
  explicit ScalarRestriction(SubfieldEmbedding emb);
  const SubfieldEmbedding& embedding() const { return emb_; }
  int degree() const { return b_; }
  /// Coordinates of z over the small field.
  Vec coords(Elt z) const;
  Elt combine(const Vec& c, size_t offset = 0) const;
  Mat restrict(const Mat& big) const;
  /// Big-field vector of length n -> small-field vector of length n*b.
  Vec flatten(const Vec& big) const;
  Vec unflatten(const Vec& small) const;
  /// Linear part of the coordinate map a -> a^(p^j) written over the small field.
  Mat frobenius_linear(int n, int j) const;

 private:
  SubfieldEmbedding emb_;
  int b_;
  std::vector<Elt> zpow_;
  std::vector<uint32_t> table_;  // big element -> packed small coordinates
};

GroupElt restrict_scalars(const ScalarRestriction& rs, const Mat& big);

/// Quadratic form assembled from an evaluator by polarization.
template <class Fn>
QForm form_from_function(const FieldPtr& F, int n, Fn&& Qfn) {
  Mat M(n);
  std::vector<Elt> diag(n);
  for (int i = 0; i < n; ++i) {
    Vec v(n, 0);
    v[i] = 1;
    diag[i] = Qfn(v);
    M(i, i) = diag[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v(n, 0);
      v[i] = v[j] = 1;
      M(i, j) = F->sub(F->sub(Qfn(v), diag[i]), diag[j]);
    }
  return QForm(F, M);
}

/// V viewed as a GF(q^2)-space of dimension m (m even), in the aligned frame e1 = lambda E1, f1 = F1.
class ExtensionFrame {
 public:
  enum class Kind { Hermitian, Quadratic };
  ExtensionFrame(const QuadSpace& V, Kind kind, uint64_t seed = 1);

  Kind kind() const { return kind_; }
  const Field& big() const { return *big_; }
  const FieldPtr& big_ptr() const { return big_; }
  const ScalarRestriction& restriction() const { return rs_; }
  Elt lambda() const { return lambda_; }
  int ell() const { return ell_; }
  /// Q on natural coordinates (Tr of the Hermitian or quadratic value).
  const QForm& natural_form() const { return natural_; }
  const Mat& P() const { return P_; }

  /// beta_sharp(x, y) for big coordinates in the order E1,F1,...
  Elt hermitian(const Vec& x, const Vec& y) const;
  /// Q_sharp(x).
  Elt qsharp(const Vec& x) const;
  /// Standard-frame vector of a V_sharp vector.
  Vec standard(const Vec& big) const;
  /// Standard-frame element from a GF(q^2)-matrix on V_sharp.
  GroupElt lift(const Mat& big) const;
  /// Standard-frame element from a natural-coordinate element.
  GroupElt to_standard(const GroupElt& nat) const;
  /// The coordinate p-power map on V_sharp (xi or psi), in the standard frame.
  GroupElt frobenius() const;
  /// r'_w for Q_sharp (Quadratic kind only), in the standard frame.
  GroupElt reflection_sharp(const Vec& w) const;

 private:
  FieldPtr small_;
  int m_;
  Kind kind_;
  FieldPtr big_;
  ScalarRestriction rs_;
  Elt lambda_;
  int ell_;
  QForm natural_;
  Mat P_, Pinv_;
};

GroupHandle build_omega(const QuadSpace& V);
GroupHandle build_T(const QuadSpace& V);
GroupHandle build_R(const QuadSpace& V);
GroupElt build_gamma(const QuadSpace& V);
GroupElt build_phi(const QuadSpace& V);

/// Products of two reflections with square spinor class, added until the group
/// generated reaches the target order of Omega of the form.
std::vector<GroupElt> omega_by_reflections(const QForm& form, const BigInt& target, uint64_t seed = 1);

/// Constructor parameters for a named subgroup family.
struct FamilySpec {
  std::string family;
  std::string S = "SL";       ///< R_semidirect_S and SL_ext_in_T: SL, Sp, Sp', G2, G2'
  int a = 0;                  ///< S = SL_a(q^b) etc.; a = m/b when 0
  int b = 1;
  std::string extra;          ///< adjoined element: xi, psi, psi_r, gamma, phi
  std::string container = "T";  ///< Sp_in_T and G2_octonion: T, SU, tensor
  int group_dim = 7;          ///< spin_copy: 7 or 9
  std::string sub;            ///< spin_copy subgroup: omega6+, omega6-, omega5
  std::string path;           ///< ingested generator file
};

/// Families: R_semidirect_S, T_full, SU_half, Omega_half_ext, Sp_tensor, Sp_in_T, SL_ext_in_T,
/// subfield_minus, half_spin_minus, N1_stab, N2_minus_stab, spin_copy, G2_octonion, ingested.
GroupHandle build_family(const QuadSpace& V, const FamilySpec& spec, uint64_t seed = 1);

}  // namespace plusfact
