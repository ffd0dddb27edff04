#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plusfact/ff.hpp"

namespace plusfact {

using Vec = std::vector<Elt>;

/// Dense square matrix, row-major. Vectors are rows; v -> v*M.
struct Mat {
  int n = 0;
  std::vector<Elt> a;

  Mat() = default;
  explicit Mat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
  static Mat identity(int n);

  Elt& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  Elt operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  Vec row(int i) const { return Vec(a.begin() + static_cast<long>(i) * n, a.begin() + static_cast<long>(i + 1) * n); }
  void set_row(int i, const Vec& v);
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_identity() const;
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_transpose(const Mat& A);
Mat mat_frob(const Field& F, const Mat& A, int j);
/// Inverse, or nullopt when singular.
std::optional<Mat> mat_inverse(const Field& F, const Mat& A);
Elt mat_det(const Field& F, const Mat& A);
int mat_rank(const Field& F, const Mat& A);
/// Scalar c if A == c*I.
std::optional<Elt> mat_scalar(const Mat& A);

Vec vec_mat(const Field& F, const Vec& v, const Mat& A);
Vec vec_add(const Field& F, const Vec& x, const Vec& y);
Vec vec_sub(const Field& F, const Vec& x, const Vec& y);
Vec vec_scale(const Field& F, Elt c, const Vec& x);
Vec vec_frob(const Field& F, const Vec& v, int j);
bool vec_is_zero(const Vec& v);

/// Rank of a list of row vectors of equal length.
int rows_rank(const Field& F, std::vector<Vec> rows, int ncols);
/// Basis of {x : x * M^T = 0} for an r x c system given as rows (solutions of
/// rows . x = 0).
std::vector<Vec> nullspace(const Field& F, std::vector<Vec> rows, int ncols);
/// One solution x of rows . x = rhs, or nullopt.
std::optional<Vec> solve(const Field& F, std::vector<Vec> rows, Vec rhs, int ncols);

/// Base-q positional code of a vector.
uint64_t vec_code(const Vec& v, uint32_t q);
Vec vec_decode(uint64_t code, int n, uint32_t q);

}  // namespace plusfact
