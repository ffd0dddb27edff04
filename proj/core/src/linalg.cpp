#include "plusfact/linalg.hpp"

#include <utility>

namespace plusfact {

Mat Mat::identity(int n) {
  Mat I(n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

void Mat::set_row(int i, const Vec& v) {
  for (int j = 0; j < n; ++j) (*this)(i, j) = v[j];
}

bool Mat::is_identity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  const int n = A.n;
  Mat C(n);
  if (F.q() == 2) {
    for (int i = 0; i < n; ++i) {
      Elt* ci = &C.a[static_cast<size_t>(i) * n];
      const Elt* ai = &A.a[static_cast<size_t>(i) * n];
      for (int k = 0; k < n; ++k) {
        if (!ai[k]) continue;
        const Elt* bk = &B.a[static_cast<size_t>(k) * n];
        for (int j = 0; j < n; ++j) ci[j] ^= bk[j];
      }
    }
    return C;
  }
  for (int i = 0; i < n; ++i) {
    Elt* ci = &C.a[static_cast<size_t>(i) * n];
    const Elt* ai = &A.a[static_cast<size_t>(i) * n];
    for (int k = 0; k < n; ++k) {
      Elt c = ai[k];
      if (!c) continue;
      const Elt* bk = &B.a[static_cast<size_t>(k) * n];
      if (c == 1) {
        for (int j = 0; j < n; ++j) ci[j] = F.add(ci[j], bk[j]);
      } else {
        for (int j = 0; j < n; ++j)
          if (bk[j]) ci[j] = F.add(ci[j], F.mul(c, bk[j]));
      }
    }
  }
  return C;
}

Mat mat_transpose(const Mat& A) {
  Mat T(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) T(j, i) = A(i, j);
  return T;
}

Mat mat_frob(const Field& F, const Mat& A, int j) {
  if (F.f() == 1 || j % static_cast<int>(F.f()) == 0) return A;
  Mat B = A;
  for (auto& x : B.a) x = F.frob(x, j);
  return B;
}

std::optional<Mat> mat_inverse(const Field& F, const Mat& A) {
  const int n = A.n;
  Mat M = A, I = Mat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(M(piv, j), M(c, j));
        std::swap(I(piv, j), I(c, j));
      }
    }
    Elt iv = F.inv(M(c, c));
    for (int j = 0; j < n; ++j) {
      M(c, j) = F.mul(M(c, j), iv);
      I(c, j) = F.mul(I(c, j), iv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || !M(r, c)) continue;
      Elt f = F.neg(M(r, c));
      for (int j = 0; j < n; ++j) {
        M(r, j) = F.add(M(r, j), F.mul(f, M(c, j)));
        I(r, j) = F.add(I(r, j), F.mul(f, I(c, j)));
      }
    }
  }
  return I;
}

Elt mat_det(const Field& F, const Mat& A) {
  const int n = A.n;
  Mat M = A;
  Elt det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, M(c, c));
    Elt iv = F.inv(M(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (!M(r, c)) continue;
      Elt f = F.neg(F.mul(M(r, c), iv));
      for (int j = c; j < n; ++j) M(r, j) = F.add(M(r, j), F.mul(f, M(c, j)));
    }
  }
  return det;
}

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<int> rref(const Field& F, std::vector<Vec>& rows, int ncols) {
  std::vector<int> pivots;
  int r = 0;
  const int nr = static_cast<int>(rows.size());
  for (int c = 0; c < ncols && r < nr; ++c) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (rows[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    Elt iv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, iv);
    for (int i = 0; i < nr; ++i) {
      if (i == r || !rows[i][c]) continue;
      Elt f = F.neg(rows[i][c]);
      for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = F.add(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

int mat_rank(const Field& F, const Mat& A) {
  std::vector<Vec> rows;
  for (int i = 0; i < A.n; ++i) rows.push_back(A.row(i));
  return rows_rank(F, rows, A.n);
}

std::optional<Elt> mat_scalar(const Mat& A) {
  Elt c = A(0, 0);
  if (c == 0) return std::nullopt;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (A(i, j) != (i == j ? c : 0u)) return std::nullopt;
  return c;
}

int rows_rank(const Field& F, std::vector<Vec> rows, int ncols) {
  return static_cast<int>(rref(F, rows, ncols).size());
}

std::vector<Vec> nullspace(const Field& F, std::vector<Vec> rows, int ncols) {
  auto piv = rref(F, rows, ncols);
  std::vector<char> is_piv(ncols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<Vec> basis;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_piv[fc]) continue;
    Vec x(ncols, 0);
    x[fc] = 1;
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = F.neg(rows[i][fc]);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vec> solve(const Field& F, std::vector<Vec> rows, Vec rhs, int ncols) {
  for (size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  auto piv = rref(F, rows, ncols + 1);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  Vec x(ncols, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = rows[i][ncols];
  return x;
}

Vec vec_mat(const Field& F, const Vec& v, const Mat& A) {
  const int n = A.n;
  Vec r(n, 0);
  for (int k = 0; k < n; ++k) {
    Elt c = v[k];
    if (!c) continue;
    const Elt* ak = &A.a[static_cast<size_t>(k) * n];
    for (int j = 0; j < n; ++j)
      if (ak[j]) r[j] = F.add(r[j], F.mul(c, ak[j]));
  }
  return r;
}

Vec vec_add(const Field& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.add(x[i], y[i]);
  return r;
}

Vec vec_sub(const Field& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.sub(x[i], y[i]);
  return r;
}

Vec vec_scale(const Field& F, Elt c, const Vec& x) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.mul(c, x[i]);
  return r;
}

Vec vec_frob(const Field& F, const Vec& v, int j) {
  if (F.f() == 1) return v;
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = F.frob(v[i], j);
  return r;
}

bool vec_is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

uint64_t vec_code(const Vec& v, uint32_t q) {
  uint64_t c = 0;
  for (size_t i = v.size(); i-- > 0;) c = c * q + v[i];
  return c;
}

Vec vec_decode(uint64_t code, int n, uint32_t q) {
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = static_cast<Elt>(code % q);
    code /= q;
  }
  return v;
}

}  // namespace plusfact
