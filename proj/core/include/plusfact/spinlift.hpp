#pragma once

#include <string>
#include <vector>

#include "plusfact/grpcore.hpp"
#include "plusfact/quadspace.hpp"

namespace plusfact {

/// Clifford algebra of W = <e1,f1,...,ek,fk,d>, n = 2k+1, with Q(e_i) = Q(f_i) = 0,
/// beta(e_i,f_i) = 1 and Q(d) = 1. Elements are coefficient vectors over the 2^n
/// monomials x_S (S a bitmask, factors in increasing index order).
class CliffordAlgebra {
 public:
  CliffordAlgebra(FieldPtr F, int n);

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  int n() const { return n_; }
  size_t dim() const { return size_t{1} << n_; }
  size_t even_dim() const { return dim() / 2; }
  const QForm& source_form() const { return form_; }

  Vec one() const;
  /// Image of a vector of W.
  Vec vector(const Vec& w) const;
  /// x_j * y
  Vec left_gen(int j, const Vec& y) const;
  Vec mul(const Vec& x, const Vec& y) const;
  /// x_i^2 = Q(x_i) and x_i x_j + x_j x_i = beta(x_i,x_j) on all generator pairs.
  bool check_relations() const;
  static bool is_even(size_t mono) { return (__builtin_popcountll(mono) & 1) == 0; }

 private:
  FieldPtr F_;
  int n_;
  QForm form_;
  // left_[j * dim + S]: x_j x_S as (monomial, coefficient) terms
  std::vector<std::vector<std::pair<uint32_t, Elt>>> left_;
};

/// Minimal left ideal C0 b of the even subalgebra.
class SpinModule {
 public:
  SpinModule(const CliffordAlgebra& alg, std::vector<Vec> basis, std::vector<int> pivots, uint64_t seed);

  int dim() const { return static_cast<int>(basis_.size()); }
  uint64_t seed() const { return seed_; }
  const std::vector<Vec>& basis() const { return basis_; }
  /// Coordinates of an element of the ideal.
  Vec coords(const Vec& y) const;
  /// Matrix of left multiplication by an even element c; rows are images of the basis.
  Mat action(const Vec& c) const;
  /// Matrix of w_1 w_2 ... w_r (r even) acting by left multiplication.
  Mat action_of_product(const std::vector<Vec>& ws) const;

 private:
  const CliffordAlgebra* alg_;
  std::vector<Vec> basis_;  // reduced: basis_[i][pivots_[j]] = delta_ij
  std::vector<int> pivots_;
  uint64_t seed_;
};

/// Splits off an irreducible module of dimension 2^((n-1)/2) using the minimal polynomial
/// of random even elements.
SpinModule split_spin_module(const CliffordAlgebra& alg, uint64_t seed = 1, int attempts = 200);

/// Quadratic forms on F^n preserved by all gens (basis of the solution space, as upper matrices).
std::vector<Mat> invariant_quadratic_forms(const Field& F, int n, const std::vector<Mat>& gens);

/// Spin image of Omega_{group_dim}(q) (group_dim 7 or 9) inside Omega(V), dim V = 8 or 16, in
/// the standard frame of V. sub selects the image of a subgroup fixing part of the source space:
/// "" (whole group), "omega6+", "omega6-", "omega5".
GroupHandle spin_copy(int group_dim, const QuadSpace& V, const std::string& sub = "", uint64_t seed = 1);

/// Omega_8^-(q0) inside Omega(V), dim V = 8, q = q0^2 even, acting on a half-spin module:
/// the subfield group of d^perp in Omega_9(q) restricted to one summand of the spin module.
GroupHandle half_spin_minus(const QuadSpace& V, uint64_t seed = 1);

}  // namespace plusfact
