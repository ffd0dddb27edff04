#include "plusfact/spinlift.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "plusfact/orders.hpp"

namespace plusfact {

namespace {

QForm clifford_source_form(const FieldPtr& F, int n) {
  if (n < 3 || n % 2 == 0 || n > 11) throw std::invalid_argument("Clifford algebra needs odd n in 3..11");
  Mat M(n);
  for (int i = 0; 2 * i + 1 < n - 1; ++i) M(2 * i, 2 * i + 1) = 1;
  M(n - 1, n - 1) = 1;
  return QForm(F, M);
}

Vec unit(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(FieldPtr F, int n) : F_(std::move(F)), n_(n), form_(clifford_source_form(F_, n)) {
  const Field& K = *F_;
  const uint32_t D = 1u << n_;
  std::vector<Elt> Qd(n_);
  std::vector<std::vector<Elt>> B(n_, std::vector<Elt>(n_));
  for (int i = 0; i < n_; ++i) {
    Qd[i] = form_.Q(unit(n_, i));
    for (int j = 0; j < n_; ++j) B[i][j] = form_.beta(unit(n_, i), unit(n_, j));
  }
  left_.assign(static_cast<size_t>(n_) * D, {});
  // x_j x_S, by moving x_j past the lowest factor of S
  std::function<std::vector<std::pair<uint32_t, Elt>>(int, uint32_t)> rec = [&](int j, uint32_t S) {
    std::vector<std::pair<uint32_t, Elt>> out;
    if (S == 0) {
      out.push_back({1u << j, 1});
      return out;
    }
    int s1 = __builtin_ctz(S);
    uint32_t rest = S & (S - 1);
    if (j < s1) {
      out.push_back({S | (1u << j), 1});
    } else if (j == s1) {
      if (Qd[j]) out.push_back({rest, Qd[j]});
    } else {
      for (auto [T, c] : rec(j, rest)) out.push_back({T | (1u << s1), K.neg(c)});
      if (B[j][s1]) out.push_back({rest, B[j][s1]});
    }
    return out;
  };
  for (int j = 0; j < n_; ++j)
    for (uint32_t S = 0; S < D; ++S) left_[static_cast<size_t>(j) * D + S] = rec(j, S);
}

Vec CliffordAlgebra::one() const {
  Vec x(dim(), 0);
  x[0] = 1;
  return x;
}

Vec CliffordAlgebra::vector(const Vec& w) const {
  if (static_cast<int>(w.size()) != n_) throw std::invalid_argument("vector length mismatch");
  Vec x(dim(), 0);
  for (int i = 0; i < n_; ++i) x[size_t{1} << i] = w[i];
  return x;
}

Vec CliffordAlgebra::left_gen(int j, const Vec& y) const {
  const Field& K = *F_;
  Vec out(dim(), 0);
  const size_t base = static_cast<size_t>(j) * dim();
  for (size_t S = 0; S < dim(); ++S) {
    if (!y[S]) continue;
    for (auto [T, c] : left_[base + S]) out[T] = K.add(out[T], K.mul(c, y[S]));
  }
  return out;
}

Vec CliffordAlgebra::mul(const Vec& x, const Vec& y) const {
  const Field& K = *F_;
  Vec out(dim(), 0);
  for (size_t S = 0; S < dim(); ++S) {
    if (!x[S]) continue;
    Vec t = y;
    for (int j = n_ - 1; j >= 0; --j)
      if (S >> j & 1) t = left_gen(j, t);
    for (size_t T = 0; T < dim(); ++T)
      if (t[T]) out[T] = K.add(out[T], K.mul(x[S], t[T]));
  }
  return out;
}

bool CliffordAlgebra::check_relations() const {
  const Field& K = *F_;
  for (int i = 0; i < n_; ++i) {
    Vec xi = vector(unit(n_, i));
    Vec sq = mul(xi, xi);
    if (sq != vec_scale(K, form_.Q(unit(n_, i)), one())) return false;
    for (int j = i + 1; j < n_; ++j) {
      Vec xj = vector(unit(n_, j));
      Vec s = vec_add(K, mul(xi, xj), mul(xj, xi));
      if (s != vec_scale(K, form_.beta(unit(n_, i), unit(n_, j)), one())) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

SpinModule::SpinModule(const CliffordAlgebra& alg, std::vector<Vec> basis, std::vector<int> pivots, uint64_t seed)
    : alg_(&alg), basis_(std::move(basis)), pivots_(std::move(pivots)), seed_(seed) {}

Vec SpinModule::coords(const Vec& y) const {
  Vec c(basis_.size());
  for (size_t j = 0; j < basis_.size(); ++j) c[j] = y[pivots_[j]];
  return c;
}

Mat SpinModule::action(const Vec& c) const {
  Mat M(dim());
  for (int j = 0; j < dim(); ++j) M.set_row(j, coords(alg_->mul(c, basis_[j])));
  return M;
}

Mat SpinModule::action_of_product(const std::vector<Vec>& ws) const {
  const Field& K = alg_->field();
  Mat M(dim());
  for (int j = 0; j < dim(); ++j) {
    Vec y = basis_[j];
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
      Vec out(y.size(), 0);
      for (int i = 0; i < alg_->n(); ++i) {
        if (!(*it)[i]) continue;
        Vec t = alg_->left_gen(i, y);
        for (size_t s = 0; s < t.size(); ++s)
          if (t[s]) out[s] = K.add(out[s], K.mul((*it)[i], t[s]));
      }
      y = std::move(out);
    }
    M.set_row(j, coords(y));
  }
  return M;
}

namespace {

/// Reduced row echelon form; stops early once the rank exceeds cap.
std::pair<std::vector<Vec>, std::vector<int>> rref(const Field& F, const std::vector<Vec>& rows, size_t cap) {
  std::vector<Vec> basis;
  std::vector<int> piv;
  for (Vec r : rows) {
    for (size_t i = 0; i < basis.size(); ++i)
      if (r[piv[i]]) r = vec_sub(F, r, vec_scale(F, r[piv[i]], basis[i]));
    int p = -1;
    for (size_t s = 0; s < r.size(); ++s)
      if (r[s]) {
        p = static_cast<int>(s);
        break;
      }
    if (p < 0) continue;
    r = vec_scale(F, F.inv(r[p]), r);
    for (auto& b : basis)
      if (b[p]) b = vec_sub(F, b, vec_scale(F, b[p], r));
    basis.push_back(std::move(r));
    piv.push_back(p);
    if (basis.size() > cap) break;
  }
  return {basis, piv};
}

}  // namespace

SpinModule split_spin_module(const CliffordAlgebra& alg, uint64_t seed, int attempts) {
  const Field& F = alg.field();
  const size_t target = size_t{1} << ((alg.n() - 1) / 2);
  const size_t D = alg.dim();
  std::mt19937_64 rng(seed);
  for (int att = 0; att < attempts; ++att) {
    Vec a(D, 0);
    for (size_t S = 0; S < D; ++S)
      if (CliffordAlgebra::is_even(S)) a[S] = static_cast<Elt>(rng() % F.q());
    // minimal polynomial x^k + c_{k-1} x^{k-1} + ... + c_0
    std::vector<Vec> pw{alg.one()};
    Vec coeff;
    while (pw.size() <= target + 1) {
      Vec next = alg.mul(a, pw.back());
      const int k = static_cast<int>(pw.size());
      std::vector<Vec> eq(D, Vec(k));
      Vec rhs(D);
      for (size_t t = 0; t < D; ++t) {
        for (int i = 0; i < k; ++i) eq[t][i] = pw[i][t];
        rhs[t] = F.neg(next[t]);
      }
      auto sol = solve(F, eq, rhs, k);
      if (sol) {
        coeff = *sol;
        coeff.push_back(1);
        break;
      }
      pw.push_back(std::move(next));
    }
    if (coeff.empty()) continue;
    const int deg = static_cast<int>(coeff.size()) - 1;
    for (Elt lam = 0; lam < F.q(); ++lam) {
      Elt val = 0, der = 0;
      for (int i = deg; i >= 0; --i) val = F.add(F.mul(val, lam), coeff[i]);
      for (int i = deg; i >= 1; --i) der = F.add(F.mul(der, lam), F.mul(F.from_int(i), coeff[i]));
      if (val || !der) continue;
      // g = mu / (x - lam) by synthetic division
      Vec g(deg);
      Elt carry = 0;
      for (int i = deg; i >= 1; --i) {
        carry = F.add(F.mul(carry, lam), coeff[i]);
        g[i - 1] = carry;
      }
      Vec b(D, 0);
      for (int i = 0; i < deg; ++i)
        if (g[i]) b = vec_add(F, b, vec_scale(F, g[i], pw[i]));
      std::vector<Vec> span;
      for (size_t S = 0; S < D; ++S) {
        if (!CliffordAlgebra::is_even(S)) continue;
        Vec t = b;
        for (int j = alg.n() - 1; j >= 0; --j)
          if (S >> j & 1) t = alg.left_gen(j, t);
        span.push_back(std::move(t));
      }
      auto [basis, piv] = rref(F, span, target);
      if (basis.size() == target) return SpinModule(alg, std::move(basis), std::move(piv), seed);
    }
  }
  throw std::runtime_error("spin module splitting failed");
}

std::vector<Mat> invariant_quadratic_forms(const Field& F, int n, const std::vector<Mat>& gens) {
  std::vector<std::pair<int, int>> idx;
  std::vector<std::vector<int>> pos(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      pos[i][j] = static_cast<int>(idx.size());
      idx.push_back({i, j});
    }
  const int N = static_cast<int>(idx.size());
  std::vector<Vec> rows;
  for (auto& A : gens) {
    std::vector<Vec> block(N, Vec(N, 0));  // block[out][unknown]
    for (int u = 0; u < N; ++u) {
      auto [i, j] = idx[u];
      // v_i v_j evaluated at vA
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Elt c = F.mul(A(k, i), A(l, j));
          if (!c) continue;
          int o = k <= l ? pos[k][l] : pos[l][k];
          block[o][u] = F.add(block[o][u], c);
        }
      block[u][u] = F.sub(block[u][u], 1);
    }
    for (auto& r : block) rows.push_back(std::move(r));
  }
  std::vector<Mat> out;
  for (auto& v : nullspace(F, rows, N)) {
    Mat M(n);
    for (int u = 0; u < N; ++u) M(idx[u].first, idx[u].second) = v[u];
    out.push_back(M);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SourceGroup {
  std::vector<std::vector<Vec>> words;  // Clifford words, each of even length
};

/// Random vector of the span with Q = 1, or empty when none was found.
Vec unit_vector(const QForm& Q, const std::vector<Vec>& span, std::mt19937_64& rng) {
  const Field& F = Q.field();
  for (int t = 0; t < 2000; ++t) {
    Vec w(Q.dim(), 0);
    for (auto& s : span) w = vec_add(F, w, vec_scale(F, static_cast<Elt>(rng() % F.q()), s));
    Elt q = Q.Q(w);
    if (!q) continue;
    Elt inv = F.inv(q);
    if (!F.is_square(inv)) continue;
    return vec_scale(F, F.sqrt(inv), w);
  }
  return {};
}

/// A plane in <e3,f3,d> on which Q is anisotropic and beta nondegenerate.
std::vector<Vec> minus_plane(const QForm& Q, std::mt19937_64& rng) {
  const Field& F = Q.field();
  const int n = Q.dim();
  std::vector<Vec> span{unit(n, 4), unit(n, 5), unit(n, n - 1)};
  for (int t = 0; t < 5000; ++t) {
    Vec x(n, 0), y(n, 0);
    for (auto& s : span) {
      x = vec_add(F, x, vec_scale(F, static_cast<Elt>(rng() % F.q()), s));
      y = vec_add(F, y, vec_scale(F, static_cast<Elt>(rng() % F.q()), s));
    }
    if (rows_rank(F, {x, y}, n) < 2) continue;
    Elt bxx = Q.beta(x, x), byy = Q.beta(y, y), bxy = Q.beta(x, y);
    if (F.sub(F.mul(bxx, byy), F.mul(bxy, bxy)) == 0) continue;
    bool aniso = true;
    for (Elt a = 0; a < F.q() && aniso; ++a)
      for (Elt b = 0; b < F.q() && aniso; ++b) {
        if (!a && !b) continue;
        if (!Q.Q(vec_add(F, vec_scale(F, a, x), vec_scale(F, b, y)))) aniso = false;
      }
    if (aniso) return {x, y};
  }
  throw std::runtime_error("no anisotropic plane found");
}

}  // namespace

GroupHandle spin_copy(int group_dim, const QuadSpace& V, const std::string& sub, uint64_t seed) {
  if (group_dim != 7 && group_dim != 9) throw std::invalid_argument("spin_copy: group_dim must be 7 or 9");
  const int sdim = 1 << ((group_dim - 1) / 2);
  if (V.dim() != sdim) throw std::invalid_argument("spin_copy: space dimension must be 8 or 16");
  if (!sub.empty() && group_dim != 7) throw std::invalid_argument("spin_copy subgroups are defined for group_dim 7");
  const FieldPtr& Fp = V.field_ptr();
  const Field& F = *Fp;
  const bool even = F.p() == 2;
  const int n = group_dim;
  CliffordAlgebra alg(Fp, n);
  SpinModule mod = split_spin_module(alg, seed);
  const QForm& W = alg.source_form();
  const Vec d = unit(n, n - 1);
  std::mt19937_64 rng(seed ^ 0x5bd1e995ull);

  // Words generating the source group on a subspace: single reflections r_w lifted as w d in
  // characteristic 2 (r_d is trivial there), else pairs r_a r_b with Q(a) = Q(b) = 1.
  auto source = [&](const std::vector<Vec>& span, bool pairs, const BigInt& target) {
    EltOps ops(Fp, n);
    std::vector<std::vector<Vec>> words;
    std::vector<GroupElt> elts;
    for (int t = 0; t < 200; ++t) {
      Vec a = unit_vector(W, span, rng);
      if (a.empty()) break;
      if (pairs) {
        Vec b = unit_vector(W, span, rng);
        words.push_back({a, b});
        elts.push_back(ops.mul(reflection(W, a), reflection(W, b)));
      } else {
        words.push_back({a, d});
        elts.push_back(reflection(W, a));
      }
      if (words.size() < 3) continue;
      GroupHandle H(Fp, n, elts);
      H.set_seed(seed);
      H.set_order_bound(target);
      if (H.order() == target) return words;
    }
    throw std::runtime_error("spin_copy: source generators did not reach the expected order");
  };

  std::vector<Vec> all;
  for (int i = 0; i < n; ++i) all.push_back(unit(n, i));
  const BigInt full_order = orders::omega_odd(n, F.q());
  auto full_words = source(all, !even, full_order);

  std::vector<Mat> full_lifts;
  for (auto& w : full_words) full_lifts.push_back(mod.action_of_product(w));
  auto forms = invariant_quadratic_forms(F, sdim, full_lifts);
  if (forms.size() != 1) throw std::logic_error("spin module does not carry a unique invariant quadratic form");
  QForm QS(Fp, forms[0]);
  Mat P = hyperbolic_frame(QS, {}, seed);  // throws unless plus type
  Mat Pinv = *mat_inverse(F, P);

  std::vector<std::vector<Vec>> words;
  BigInt target;
  if (sub.empty()) {
    words = full_words;
    target = full_order;
  } else if (sub == "omega6+" || sub == "omega6-") {
    std::vector<Vec> span{unit(n, 0), unit(n, 1), unit(n, 2), unit(n, 3)};
    if (sub == "omega6+") {
      span.push_back(unit(n, 4));
      span.push_back(unit(n, 5));
    } else {
      for (auto& v : minus_plane(W, rng)) span.push_back(v);
    }
    target = orders::omega_even(6, sub == "omega6+" ? 1 : -1, F.q());
    words = source(span, true, target);
  } else if (sub == "omega5") {
    std::vector<Vec> span{unit(n, 0), unit(n, 1), unit(n, 2), unit(n, 3), d};
    target = orders::omega_odd(5, F.q());
    words = source(span, !even, target);
  } else {
    throw std::invalid_argument("spin_copy: unknown subgroup " + sub);
  }

  std::vector<GroupElt> gens;
  for (auto& w : words) {
    GroupElt g = to_frame(F, P, Pinv, {mod.action_of_product(w), 0});
    if (!V.is_isometry(g)) throw std::logic_error("spin_copy: lifted generator does not preserve Q");
    if (!V.dickson_invariant(g).in_omega()) throw std::logic_error("spin_copy: lifted generator outside Omega");
    gens.push_back(g);
  }
  GroupHandle H(Fp, V.dim(), gens);
  H.set_seed(seed);
  // Spin -> Omega has kernel of order (2, q-1)
  H.set_order_bound(even ? target : 2 * target);
  return H;
}

GroupHandle half_spin_minus(const QuadSpace& V, uint64_t seed) {
  const FieldPtr& Fp = V.field_ptr();
  const Field& F = *Fp;
  if (V.m() != 4) throw std::invalid_argument("half_spin_minus: V must have dimension 8");
  if (F.p() != 2 || F.f() % 2) throw std::invalid_argument("half_spin_minus: q must be an even square");
  FieldPtr k0 = Field::make(2, F.f() / 2);
  SubfieldEmbedding emb(k0, Fp);
  const int n = 9;
  CliffordAlgebra alg(Fp, n);
  SpinModule mod = split_spin_module(alg, seed);
  const QForm& W = alg.source_form();

  // d^perp = <e1,...,f4> carries a GF(q0)-form of minus type: e1..f3 and a = e4+f4,
  // b = t e4 + (t+1) f4 with t^2 + t = mu0 irreducible over GF(q0)
  Elt mu0 = 0;
  for (Elt c = 1; c < k0->q() && !mu0; ++c) {
    bool root = false;
    for (Elt x = 0; x < k0->q(); ++x) root |= k0->add(k0->mul(x, x), x) == c;
    if (!root) mu0 = c;
  }
  Elt t = 0;
  for (Elt x = 0; x < F.q(); ++x)
    if (F.add(F.mul(x, x), x) == emb(mu0)) t = x;
  std::vector<Vec> basis;
  for (int i = 0; i < 6; ++i) basis.push_back(unit(n, i));
  Vec a(n, 0), b(n, 0);
  a[6] = a[7] = 1;
  b[6] = t;
  b[7] = F.add(t, 1);
  basis.push_back(a);
  basis.push_back(b);

  // the half-spin summand is the image of the central idempotent sum e_i f_i of C0(d^perp)
  Vec zeta(alg.dim(), 0);
  for (int i = 0; i < 4; ++i)
    zeta = vec_add(F, zeta, alg.mul(alg.vector(unit(n, 2 * i)), alg.vector(unit(n, 2 * i + 1))));
  Mat Zm = mod.action(zeta);
  if (mat_mul(F, Zm, Zm) != Zm) throw std::logic_error("half_spin_minus: sum e_i f_i is not idempotent");
  std::vector<Vec> zrows;
  for (int i = 0; i < Zm.n; ++i) zrows.push_back(Zm.row(i));
  auto [half, piv] = rref(F, zrows, zrows.size());
  if (half.size() != 8) throw std::logic_error("half_spin_minus: half-spin summand is not 8-dimensional");
  auto restrict_half = [&](const Mat& M) {
    Mat R(8);
    for (int i = 0; i < 8; ++i) {
      Vec img = vec_mat(F, half[i], M);
      for (int j = 0; j < 8; ++j) R(i, j) = img[piv[j]];
      Vec back(Zm.n, 0);
      for (int j = 0; j < 8; ++j) back = vec_add(F, back, vec_scale(F, R(i, j), half[j]));
      if (back != img) throw std::logic_error("half_spin_minus: summand is not invariant");
    }
    return R;
  };

  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
  auto random_vector = [&] {
    while (true) {
      Vec x(n, 0);
      for (auto& v : basis) x = vec_add(F, x, vec_scale(F, emb(static_cast<Elt>(rng() % k0->q())), v));
      if (W.Q(x) != 0) return x;
    }
  };
  const BigInt target = orders::omega_even(8, -1, k0->q());
  EltOps ops(Fp, n);
  std::vector<std::vector<Vec>> words;
  std::vector<GroupElt> elts;
  for (int tries = 0; tries < 200; ++tries) {
    Vec x = random_vector(), y = random_vector();
    words.push_back({x, y});
    elts.push_back(ops.mul(reflection(W, x), reflection(W, y)));
    if (words.size() < 3) continue;
    GroupHandle H(Fp, n, elts);
    H.set_seed(seed);
    H.set_order_bound(target);
    if (H.order() == target) break;
    if (tries == 199) throw std::runtime_error("half_spin_minus: source generators did not reach the expected order");
  }

  std::vector<Mat> lifts;
  for (auto& w : words) lifts.push_back(restrict_half(mod.action_of_product(w)));
  auto forms = invariant_quadratic_forms(F, 8, lifts);
  if (forms.size() != 1) throw std::logic_error("half_spin_minus: no unique invariant quadratic form");
  QForm QS(Fp, forms[0]);
  Mat P = hyperbolic_frame(QS, {}, seed);
  Mat Pinv = *mat_inverse(F, P);
  std::vector<GroupElt> gens;
  for (auto& L : lifts) {
    GroupElt g = to_frame(F, P, Pinv, {L, 0});
    if (!V.is_isometry(g) || !V.dickson_invariant(g).in_omega())
      throw std::logic_error("half_spin_minus: lifted generator outside Omega");
    gens.push_back(g);
  }
  GroupHandle H(Fp, V.dim(), gens);
  H.set_seed(seed);
  H.set_order_bound(target);
  return H;
}

}  // namespace plusfact
