#include "plusfact/quadspace.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace plusfact {

QForm::QForm(FieldPtr F, Mat upper) : F_(std::move(F)), M_(std::move(upper)) {
  const Field& K = *F_;
  const int n = M_.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (M_(i, j)) throw std::invalid_argument("quadratic form matrix must be upper triangular");
  G_ = Mat(n);
  for (int i = 0; i < n; ++i) {
    G_(i, i) = K.add(M_(i, i), M_(i, i));
    for (int j = i + 1; j < n; ++j) {
      G_(i, j) = M_(i, j);
      G_(j, i) = M_(i, j);
    }
  }
}

QForm QForm::hyperbolic(FieldPtr F, int m) {
  Mat M(2 * m);
  for (int i = 0; i < m; ++i) M(2 * i, 2 * i + 1) = 1;
  QForm Qf(std::move(F), std::move(M));
  Qf.hyperbolic_ = true;
  return Qf;
}

Elt QForm::Q(const Vec& v) const {
  const Field& K = *F_;
  const int n = M_.n;
  Elt s = 0;
  if (hyperbolic_) {
    for (int i = 0; i + 1 < n; i += 2)
      if (v[i] && v[i + 1]) s = K.add(s, K.mul(v[i], v[i + 1]));
    return s;
  }
  for (int i = 0; i < n; ++i) {
    if (!v[i]) continue;
    Elt row = 0;
    for (int j = i; j < n; ++j)
      if (M_(i, j) && v[j]) row = K.add(row, K.mul(M_(i, j), v[j]));
    s = K.add(s, K.mul(v[i], row));
  }
  return s;
}

Elt QForm::beta(const Vec& x, const Vec& y) const {
  const Field& K = *F_;
  const int n = M_.n;
  Elt s = 0;
  if (hyperbolic_) {
    for (int i = 0; i + 1 < n; i += 2) {
      if (x[i] && y[i + 1]) s = K.add(s, K.mul(x[i], y[i + 1]));
      if (x[i + 1] && y[i]) s = K.add(s, K.mul(x[i + 1], y[i]));
    }
    return s;
  }
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    Elt row = 0;
    for (int j = 0; j < n; ++j)
      if (G_(i, j) && y[j]) row = K.add(row, K.mul(G_(i, j), y[j]));
    s = K.add(s, K.mul(x[i], row));
  }
  return s;
}

QForm QForm::pullback(const Mat& g) const {
  const Field& K = *F_;
  Mat N = mat_mul(K, mat_mul(K, g, M_), mat_transpose(g));
  Mat U(N.n);
  for (int i = 0; i < N.n; ++i) {
    U(i, i) = N(i, i);
    for (int j = i + 1; j < N.n; ++j) U(i, j) = K.add(N(i, j), N(j, i));
  }
  return QForm(F_, U);
}

bool QForm::preserved_by(const GroupElt& g) const {
  const Field& K = *F_;
  if (g.frob == 0) return pullback(g.A) == *this;
  // Q(v^phi^j A) = Q(v)^{p^j} must hold; compare on coefficient level
  QForm pb = pullback(g.A);
  Mat tw = M_;
  for (auto& x : tw.a) x = K.frob(x, g.frob);
  return pb.M_ == tw;
}

GroupElt reflection(const QForm& form, const Vec& w) {
  const Field& K = form.field();
  Elt qw = form.Q(w);
  if (qw == 0) throw std::invalid_argument("reflection in a singular vector");
  const int n = form.dim();
  Elt iq = K.inv(qw);
  Mat A = Mat::identity(n);
  // row i: e_i - beta(e_i,w)/Q(w) w
  for (int i = 0; i < n; ++i) {
    Elt b = 0;
    for (int j = 0; j < n; ++j)
      if (form.gram()(i, j) && w[j]) b = K.add(b, K.mul(form.gram()(i, j), w[j]));
    if (!b) continue;
    Elt c = K.neg(K.mul(b, iq));
    for (int j = 0; j < n; ++j) A(i, j) = K.add(A(i, j), K.mul(c, w[j]));
  }
  return {A, 0};
}

DicksonResult reflection_decomposition(const QForm& form, const GroupElt& g, uint64_t seed) {
  if (g.frob != 0) throw std::invalid_argument("reflection decomposition needs a linear element");
  if (!form.preserved_by(g)) throw std::invalid_argument("element is not an isometry");
  const Field& K = form.field();
  const int n = form.dim();
  EltOps ops(form.field_ptr(), n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> coef(0, K.q() - 1);
  auto random_in = [&](const std::vector<Vec>& basis) {
    Vec z(n, 0);
    for (auto& b : basis) z = vec_add(K, z, vec_scale(K, coef(rng), b));
    return z;
  };

  for (int attempt = 0; attempt < 64; ++attempt) {
    GroupElt h = g;
    std::vector<Vec> ws;
    auto apply_reflection = [&](const Vec& w) {
      h = ops.mul(h, reflection(form, w));
      ws.push_back(w);
    };
    if (attempt > 0) {
      // restart from g r_z for a random nonsingular z
      Vec z(n);
      do {
        for (auto& x : z) x = coef(rng);
      } while (form.Q(z) == 0);
      apply_reflection(z);
    }
    // fixed: independent vectors made fixed so far; later reflections are orthogonal to them
    std::vector<Vec> fixed;
    bool stuck = false;
    while (!ops.is_identity(h) && !stuck) {
      stuck = true;
      for (int t = 0; t < n + 32 && stuck; ++t) {
        Vec v(n, 0);
        if (t < n) {
          v[t] = 1;
        } else {
          for (auto& x : v) x = coef(rng);
        }
        auto with_v = fixed;
        with_v.push_back(v);
        if (rows_rank(K, with_v, n) <= static_cast<int>(fixed.size())) continue;
        Vec w = vec_sub(K, ops.apply(v, h), v);
        if (vec_is_zero(w)) continue;
        if (form.Q(w) != 0) {
          apply_reflection(w);
          fixed.push_back(v);
          stuck = false;
          break;
        }
        // two-step correction: r_z with z orthogonal to the fixed vectors, then r_{w'}
        std::vector<Vec> eqs;
        for (auto& u : fixed) eqs.push_back(vec_mat(K, u, form.gram()));
        auto perp = nullspace(K, eqs, n);
        for (int s = 0; s < 64 && stuck; ++s) {
          Vec z = random_in(perp);
          if (form.Q(z) == 0) continue;
          GroupElt hz = ops.mul(h, reflection(form, z));
          Vec w2 = vec_sub(K, ops.apply(v, hz), v);
          if (!vec_is_zero(w2) && form.Q(w2) == 0) continue;
          apply_reflection(z);
          if (!vec_is_zero(w2)) apply_reflection(w2);
          fixed.push_back(v);
          stuck = false;
        }
      }
    }
    if (stuck || !ops.is_identity(h)) continue;
    // h * r_{w1} ... r_{wk} = 1, so g = r_{wk} ... r_{w1}
    DicksonResult res;
    res.reflections.assign(ws.rbegin(), ws.rend());
    res.parity = static_cast<int>(ws.size() % 2);
    if (K.p() != 2) {
      Elt prod = 1;
      for (auto& w : ws) prod = K.mul(prod, form.Q(w));
      res.spinor_square = K.is_square(prod);
    }
    return res;
  }
  throw std::runtime_error("reflection decomposition did not converge");
}

QuadSpace::QuadSpace(FieldPtr F, int m)
    : F_(F), m_(m), form_(QForm::hyperbolic(F, m)), ops_(F, 2 * m), mu_(find_mu(*F)) {
  if (m < 1) throw std::invalid_argument("half-dimension must be positive");
}

Vec QuadSpace::e(int i) const {
  Vec v = zero();
  v.at(2 * (i - 1)) = 1;
  return v;
}

Vec QuadSpace::f(int i) const {
  Vec v = zero();
  v.at(2 * (i - 1) + 1) = 1;
  return v;
}

Vec QuadSpace::u() const {
  if (m_ < 2) throw std::invalid_argument("u needs m >= 2");
  Vec v = vec_add(*F_, e(1), e(2));
  return vec_add(*F_, v, vec_scale(*F_, mu_, f(2)));
}

Vec QuadSpace::u_prime() const {
  if (m_ < 2) throw std::invalid_argument("u' needs m >= 2");
  const Field& K = *F_;
  Elt mu2 = K.mul(mu_, mu_);
  Elt c1 = K.sub(1, mu2);
  Elt c2 = K.add(K.sub(mu2, 1), K.inv(mu_));
  Vec v = zero();
  v[0] = c1;
  v[2] = c2;
  v[1] = mu2;
  v[3] = mu2;
  return v;
}

Vec QuadSpace::parse(const std::string& s) const {
  const Field& K = *F_;
  Vec v = zero();
  std::string tok;
  std::vector<std::string> terms;
  for (char c : s) {
    if (c == '+') {
      terms.push_back(tok);
      tok.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      tok += c;
    }
  }
  terms.push_back(tok);
  for (auto& t : terms) {
    if (t.empty()) throw std::invalid_argument("empty term in vector '" + s + "'");
    Elt coef = 1;
    std::string label = t;
    auto star = t.find('*');
    if (star != std::string::npos) {
      coef = static_cast<Elt>(std::stoul(t.substr(0, star)));
      if (coef >= K.q()) throw std::invalid_argument("coefficient out of range in '" + s + "'");
      label = t.substr(star + 1);
    }
    Vec b;
    if (label == "u") {
      b = u();
    } else if (label == "up" || label == "u'") {
      b = u_prime();
    } else if ((label[0] == 'e' || label[0] == 'f') && label.size() > 1) {
      int i = std::stoi(label.substr(1));
      if (i < 1 || i > m_) throw std::invalid_argument("basis index out of range in '" + s + "'");
      b = label[0] == 'e' ? e(i) : f(i);
    } else {
      throw std::invalid_argument("unknown vector label '" + label + "'");
    }
    v = vec_add(K, v, vec_scale(K, coef, b));
  }
  return v;
}

std::string QuadSpace::format(const Vec& v) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    if (!v[i]) continue;
    if (!first) os << "+";
    first = false;
    if (v[i] != 1) os << v[i] << "*";
    os << (i % 2 == 0 ? 'e' : 'f') << (i / 2 + 1);
  }
  if (first) os << "0";
  return os.str();
}

Elt QuadSpace::eval_Q(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim()) throw std::invalid_argument("dimension mismatch");
  return form_.Q(v);
}

Elt QuadSpace::eval_beta(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != dim() || static_cast<int>(y.size()) != dim())
    throw std::invalid_argument("dimension mismatch");
  return form_.beta(x, y);
}

GroupElt QuadSpace::reflection(const Vec& w) const { return plusfact::reflection(form_, w); }

GroupElt QuadSpace::eichler(const Vec& a, const Vec& b) const {
  const Field& K = *F_;
  if (form_.Q(a) != 0) throw std::invalid_argument("eichler: a must be singular");
  if (form_.beta(a, b) != 0) throw std::invalid_argument("eichler: b must be perpendicular to a");
  const int n = dim();
  Elt qb = form_.Q(b);
  Mat A(n);
  for (int i = 0; i < n; ++i) {
    Vec x(n, 0);
    x[i] = 1;
    Elt ba = form_.beta(x, a), bb = form_.beta(x, b);
    Vec img = x;
    img = vec_add(K, img, vec_scale(K, ba, b));
    img = vec_sub(K, img, vec_scale(K, bb, a));
    img = vec_sub(K, img, vec_scale(K, K.mul(qb, ba), a));
    A.set_row(i, img);
  }
  return {A, 0};
}

DicksonResult QuadSpace::dickson_invariant(const GroupElt& g) const { return reflection_decomposition(form_, g); }

bool QuadSpace::is_isometry(const GroupElt& g) const { return form_.preserved_by(g); }

namespace {

bool independent_of(const Field& F, const std::vector<Vec>& span, const Vec& v, int n) {
  std::vector<Vec> rows = span;
  int r0 = rows_rank(F, rows, n);
  rows.push_back(v);
  return rows_rank(F, rows, n) > r0;
}

}  // namespace

GroupElt QuadSpace::witt_extend(const std::vector<std::pair<Vec, Vec>>& pairs, Coset coset, uint64_t seed) const {
  const Field& K = *F_;
  const int n = dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> coef(0, K.q() - 1);

  std::vector<Vec> X, Y;
  for (auto& [s, t] : pairs) {
    X.push_back(s);
    Y.push_back(t);
  }
  for (size_t i = 0; i < X.size(); ++i) {
    if (form_.Q(X[i]) != form_.Q(Y[i])) throw std::invalid_argument("witt_extend: Gram mismatch (Q)");
    for (size_t j = 0; j < i; ++j)
      if (form_.beta(X[i], X[j]) != form_.beta(Y[i], Y[j]))
        throw std::invalid_argument("witt_extend: Gram mismatch (beta)");
  }
  if (rows_rank(K, X, n) != static_cast<int>(X.size()))
    throw std::invalid_argument("witt_extend: sources are dependent");
  if (rows_rank(K, Y, n) != static_cast<int>(Y.size()))
    throw std::invalid_argument("witt_extend: targets are dependent");

  for (int i = 0; i < n && static_cast<int>(X.size()) < n; ++i) {
    Vec b = zero();
    b[i] = 1;
    if (!independent_of(K, X, b, n)) continue;
    // target y: beta(y, Y_k) = beta(b, X_k), Q(y) = Q(b), y outside span(Y)
    std::vector<Vec> rows;
    Vec rhs;
    for (size_t k = 0; k < X.size(); ++k) {
      Vec row(n);
      for (int c = 0; c < n; ++c) {
        Vec ec = zero();
        ec[c] = 1;
        row[c] = form_.beta(ec, Y[k]);
      }
      rows.push_back(row);
      rhs.push_back(form_.beta(b, X[k]));
    }
    auto y0 = rows.empty() ? std::optional<Vec>(zero()) : solve(K, rows, rhs, n);
    if (!y0) throw std::runtime_error("witt_extend: inconsistent linear constraints");
    auto N = rows.empty() ? std::vector<Vec>() : nullspace(K, rows, n);
    if (rows.empty())
      for (int c = 0; c < n; ++c) {
        Vec ec = zero();
        ec[c] = 1;
        N.push_back(ec);
      }
    const Elt want = form_.Q(b);
    std::optional<Vec> pick;
    auto try_vec = [&](const Vec& y) {
      if (form_.Q(y) == want && independent_of(K, Y, y, n)) pick = y;
    };
    try_vec(*y0);
    for (int t = 0; t < 20000 && !pick; ++t) {
      Vec y = *y0;
      for (auto& nv : N) y = vec_add(K, y, vec_scale(K, coef(rng), nv));
      try_vec(y);
    }
    if (!pick) throw std::runtime_error("witt_extend: no admissible image found");
    X.push_back(b);
    Y.push_back(*pick);
  }
  Mat Xm(n), Ym(n);
  for (int i = 0; i < n; ++i) {
    Xm.set_row(i, X[i]);
    Ym.set_row(i, Y[i]);
  }
  auto Xi = mat_inverse(K, Xm);
  GroupElt g{mat_mul(K, *Xi, Ym), 0};

  auto want_omega = coset == Coset::Omega;
  auto d = dickson_invariant(g);
  if (d.in_omega() == want_omega) return g;

  // correct by reflections fixing every target
  std::vector<Vec> trows;
  for (size_t k = 0; k < pairs.size(); ++k) {
    Vec row(n);
    for (int c = 0; c < n; ++c) {
      Vec ec = zero();
      ec[c] = 1;
      row[c] = form_.beta(ec, pairs[k].second);
    }
    trows.push_back(row);
  }
  std::vector<Vec> perp;
  if (trows.empty()) {
    for (int c = 0; c < n; ++c) {
      Vec ec = zero();
      ec[c] = 1;
      perp.push_back(ec);
    }
  } else {
    perp = nullspace(K, trows, n);
  }
  auto random_perp = [&]() {
    Vec w = zero();
    for (auto& pv : perp) w = vec_add(K, w, vec_scale(K, coef(rng), pv));
    return w;
  };
  for (int t = 0; t < 20000; ++t) {
    Vec w = random_perp();
    Elt qw = form_.Q(w);
    if (qw == 0) continue;
    GroupElt h = ops_.mul(g, reflection(w));
    if (dickson_invariant(h).in_omega() == want_omega) return h;
    if (K.p() != 2) {
      // two reflections adjust the spinor class with parity unchanged
      Vec w2 = random_perp();
      if (form_.Q(w2) == 0) continue;
      GroupElt h2 = ops_.mul(h, reflection(w2));
      if (dickson_invariant(h2).in_omega() == want_omega) return h2;
    }
  }
  throw std::runtime_error("witt_extend: requested coset unachievable");
}

namespace {

std::vector<Vec> span_basis(const Field& F, std::vector<Vec> rows, int n) {
  // echelon basis of the span
  std::vector<Vec> out;
  for (auto& r : rows) {
    if (vec_is_zero(r)) continue;
    std::vector<Vec> t = out;
    t.push_back(r);
    if (rows_rank(F, t, n) > static_cast<int>(out.size())) out.push_back(r);
  }
  return out;
}

Vec combo(const Field& F, const std::vector<Vec>& W, uint64_t code, int n) {
  Vec x(n, 0);
  for (const auto& w : W) {
    Elt c = static_cast<Elt>(code % F.q());
    code /= F.q();
    if (c) x = vec_add(F, x, vec_scale(F, c, w));
  }
  return x;
}

// one greedy hyperbolic step; returns false when no singular vector pairs up
bool next_pair(const QForm& form, std::vector<Vec>& W, Vec& e, Vec& f, std::mt19937_64& rng) {
  const Field& K = form.field();
  const int n = form.dim();
  if (W.empty()) return false;
  uint64_t total = 1;
  for (size_t i = 0; i < W.size() && total < (1ull << 20); ++i) total *= K.q();
  std::uniform_int_distribution<uint64_t> pick(1, total > 1 ? total - 1 : 1);
  const uint64_t scan = std::min<uint64_t>(total, 1ull << 16);
  for (uint64_t t = 1; t < scan + 4096; ++t) {
    uint64_t code = t < scan ? t : pick(rng);
    Vec x = combo(K, W, code, n);
    if (vec_is_zero(x) || form.Q(x) != 0) continue;
    for (const auto& w : W) {
      Elt b = form.beta(x, w);
      if (!b) continue;
      e = x;
      f = vec_scale(K, K.inv(b), w);
      f = vec_sub(K, f, vec_scale(K, form.Q(f), e));
      return true;
    }
  }
  return false;
}

void project_out(const QForm& form, std::vector<Vec>& W, const Vec& e, const Vec& f) {
  const Field& K = form.field();
  for (auto& w : W) {
    Elt a = form.beta(w, f), b = form.beta(w, e);
    w = vec_sub(K, w, vec_scale(K, a, e));
    w = vec_sub(K, w, vec_scale(K, b, f));
  }
  W = span_basis(K, W, form.dim());
}

}  // namespace

Mat hyperbolic_frame(const QForm& form, const std::vector<std::pair<Vec, Vec>>& prefix, uint64_t seed) {
  const Field& K = form.field();
  const int n = form.dim();
  if (n % 2) throw std::invalid_argument("hyperbolic frame needs even dimension");
  std::mt19937_64 rng(seed);
  std::vector<Vec> W;
  for (int i = 0; i < n; ++i) {
    Vec b(n, 0);
    b[i] = 1;
    W.push_back(b);
  }
  std::vector<Vec> rows;
  for (auto& [e, f] : prefix) {
    if (form.Q(e) != 0 || form.Q(f) != 0 || form.beta(e, f) != 1)
      throw std::invalid_argument("prefix is not a hyperbolic pair");
    for (auto& r : rows)
      if (form.beta(r, e) || form.beta(r, f)) throw std::invalid_argument("prefix pairs are not orthogonal");
    rows.push_back(e);
    rows.push_back(f);
    project_out(form, W, e, f);
  }
  while (static_cast<int>(rows.size()) < n) {
    Vec e, f;
    if (!next_pair(form, W, e, f, rng)) throw std::runtime_error("form is not of plus type");
    rows.push_back(e);
    rows.push_back(f);
    project_out(form, W, e, f);
  }
  Mat P(n);
  for (int i = 0; i < n; ++i) P.set_row(i, rows[i]);
  if (!mat_inverse(K, P)) throw std::runtime_error("internal: frame is singular");
  return P;
}

int witt_index(const QForm& form) {
  std::mt19937_64 rng(7);
  const int n = form.dim();
  std::vector<Vec> W;
  for (int i = 0; i < n; ++i) {
    Vec b(n, 0);
    b[i] = 1;
    W.push_back(b);
  }
  int k = 0;
  Vec e, f;
  while (next_pair(form, W, e, f, rng)) {
    ++k;
    project_out(form, W, e, f);
  }
  return k;
}

Mat symplectic_frame(const Field& F, const Mat& gram) {
  const int n = gram.n;
  auto B = [&](const Vec& x, const Vec& y) {
    Vec gy(n, 0);
    for (int i = 0; i < n; ++i) {
      Elt s = 0;
      for (int j = 0; j < n; ++j)
        if (gram(i, j) && y[j]) s = F.add(s, F.mul(gram(i, j), y[j]));
      gy[i] = s;
    }
    Elt s = 0;
    for (int i = 0; i < n; ++i)
      if (x[i] && gy[i]) s = F.add(s, F.mul(x[i], gy[i]));
    return s;
  };
  std::vector<Vec> W;
  for (int i = 0; i < n; ++i) {
    Vec b(n, 0);
    b[i] = 1;
    W.push_back(b);
  }
  std::vector<Vec> rows;
  while (!W.empty()) {
    Vec e = W[0], f;
    bool ok = false;
    for (size_t i = 1; i < W.size(); ++i) {
      Elt b = B(e, W[i]);
      if (!b) continue;
      f = vec_scale(F, F.inv(b), W[i]);
      ok = true;
      break;
    }
    if (!ok) throw std::runtime_error("alternating form is degenerate");
    rows.push_back(e);
    rows.push_back(f);
    for (auto& w : W) {
      Elt a = B(w, f), b = B(w, e);
      w = vec_sub(F, w, vec_scale(F, a, e));
      w = vec_add(F, w, vec_scale(F, b, f));
    }
    W = span_basis(F, W, n);
  }
  Mat P(n);
  for (int i = 0; i < n; ++i) P.set_row(i, rows[i]);
  return P;
}

GroupElt to_frame(const Field& F, const Mat& P, const Mat& Pinv, const GroupElt& g) {
  return {mat_mul(F, mat_mul(F, mat_frob(F, P, g.frob), g.A), Pinv), g.frob};
}

}  // namespace plusfact
