#include "plusfact/constructions.hpp"

#include <random>
#include <stdexcept>

#include "plusfact/ingest.hpp"
#include "plusfact/octonions.hpp"
#include "plusfact/orders.hpp"
#include "plusfact/spinlift.hpp"

namespace plusfact {

namespace gens {

std::vector<Mat> sl(const Field& F, int n) {
  std::vector<Mat> out;
  if (n < 2) return out;
  Mat t = Mat::identity(n);
  t(0, 1) = 1;
  out.push_back(t);
  Mat c(n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
  c(n - 1, 0) = (n % 2 == 0) ? F.neg(1) : 1;
  out.push_back(c);
  if (F.q() > 3 || (F.q() == 3 && n == 2)) {
    Mat d = Mat::identity(n);
    d(0, 0) = F.gen();
    d(1, 1) = F.inv(F.gen());
    out.push_back(d);
  }
  return out;
}

std::vector<Mat> gl(const Field& F, int n) {
  auto out = sl(F, n);
  if (F.q() > 2) {
    Mat d = Mat::identity(n);
    d(0, 0) = F.gen();
    out.push_back(d);
  }
  return out;
}

std::vector<Mat> sp(const Field& F, int n) {
  if (n % 2) throw std::invalid_argument("Sp needs even dimension");
  const int k = n / 2;
  std::vector<Mat> out;
  std::vector<Mat> levi;
  if (k == 1) {
    if (F.q() > 3) {
      Mat d(1);
      d(0, 0) = F.gen();
      levi.push_back(d);
    }
  } else {
    levi = gl(F, k);
  }
  for (auto& A : levi) {
    Mat B = mat_transpose(*mat_inverse(F, A));
    Mat M(n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        M(2 * i, 2 * j) = A(i, j);
        M(2 * i + 1, 2 * j + 1) = B(i, j);
      }
    out.push_back(M);
  }
  Elt c = 1;
  for (uint32_t s = 0; s < F.f(); ++s) {
    Mat x = Mat::identity(n), y = Mat::identity(n);
    x(1, 0) = c;
    y(0, 1) = c;
    out.push_back(x);
    out.push_back(y);
    c = F.mul(c, F.gen());
  }
  return out;
}

std::vector<Mat> omega_plus(const Field& F, int m) {
  QuadSpace V(Field::make(F.p(), F.f()), m);
  std::vector<Mat> out;
  for (auto& A : sl(F, m)) out.push_back(t_element(F, A));
  if (m == 1) throw std::invalid_argument("Omega^+_2 is not generated this way");
  Elt c = 1;
  for (uint32_t s = 0; s < F.f(); ++s) {
    out.push_back(V.eichler(V.e(1), vec_scale(F, c, V.e(2))).A);
    out.push_back(V.eichler(V.f(1), vec_scale(F, c, V.f(2))).A);
    c = F.mul(c, F.gen());
  }
  return out;
}

std::vector<Mat> su_even(const SubfieldEmbedding& emb, int l) {
  const Field& K = *emb.big();
  const Field& k = *emb.small();
  const int n = 2 * l;
  const int fs = static_cast<int>(k.f());
  std::vector<Mat> out;
  if (l >= 2) {
    for (auto& A : sl(K, l)) {
      Mat B = mat_frob(K, mat_transpose(*mat_inverse(K, A)), fs);
      Mat M(n);
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
          M(2 * i, 2 * j) = A(i, j);
          M(2 * i + 1, 2 * j + 1) = B(i, j);
        }
      out.push_back(M);
    }
  } else {
    Mat d(2);
    d(0, 0) = K.gen();
    d(1, 1) = K.frob(K.inv(K.gen()), fs);
    out.push_back(d);
  }
  // c + c^q = 0
  Elt delta = 1;
  if (k.p() != 2) {
    Elt z = K.gen();
    delta = K.sub(z, K.frob(z, fs));
  }
  Elt b = 1;
  for (int s = 0; s < fs; ++s) {
    Elt c = K.mul(delta, emb(b));
    Mat x = Mat::identity(n), y = Mat::identity(n);
    x(1, 0) = c;  // F1 -> F1 + c E1
    y(0, 1) = c;  // E1 -> E1 + c F1
    out.push_back(x);
    out.push_back(y);
    b = k.mul(b, k.gen());
  }
  return out;
}

}  // namespace gens

Mat t_element(const Field& F, const Mat& A) {
  const int m = A.n;
  auto Ai = mat_inverse(F, A);
  if (!Ai) throw std::invalid_argument("t_element: singular matrix");
  Mat B = mat_transpose(*Ai);
  Mat M(2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      M(2 * i, 2 * j) = A(i, j);
      M(2 * i + 1, 2 * j + 1) = B(i, j);
    }
  return M;
}

// ---------------------------------------------------------------------------
// ScalarRestriction

ScalarRestriction::ScalarRestriction(SubfieldEmbedding emb) : emb_(std::move(emb)) {
  const Field& K = *emb_.big();
  const Field& k = *emb_.small();
  b_ = static_cast<int>(emb_.degree());
  zpow_.resize(b_ + 1);
  zpow_[0] = 1;
  for (int i = 1; i <= b_; ++i) zpow_[i] = K.mul(zpow_[i - 1], K.gen());
  table_.assign(K.q(), 0);
  const uint32_t qs = k.q();
  std::vector<bool> seen(K.q(), false);
  uint64_t total = 1;
  for (int i = 0; i < b_; ++i) total *= qs;
  for (uint64_t code = 0; code < total; ++code) {
    Elt x = 0;
    uint64_t c = code;
    for (int i = 0; i < b_; ++i) {
      x = K.add(x, K.mul(emb_(static_cast<Elt>(c % qs)), zpow_[i]));
      c /= qs;
    }
    if (seen[x]) throw std::logic_error("restriction basis is not a basis");
    seen[x] = true;
    table_[x] = static_cast<uint32_t>(code);
  }
}

Vec ScalarRestriction::coords(Elt z) const {
  const uint32_t qs = emb_.small()->q();
  Vec c(b_);
  uint32_t code = table_.at(z);
  for (int i = 0; i < b_; ++i) {
    c[i] = code % qs;
    code /= qs;
  }
  return c;
}

Elt ScalarRestriction::combine(const Vec& c, size_t offset) const {
  const Field& K = *emb_.big();
  Elt x = 0;
  for (int i = 0; i < b_; ++i) x = K.add(x, K.mul(emb_(c[offset + i]), zpow_[i]));
  return x;
}

Vec ScalarRestriction::flatten(const Vec& big) const {
  Vec out;
  out.reserve(big.size() * b_);
  for (Elt z : big) {
    Vec c = coords(z);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

Vec ScalarRestriction::unflatten(const Vec& small) const {
  if (small.size() % b_) throw std::invalid_argument("unflatten: length mismatch");
  Vec out(small.size() / b_);
  for (size_t k = 0; k < out.size(); ++k) out[k] = combine(small, k * b_);
  return out;
}

Mat ScalarRestriction::restrict(const Mat& big) const {
  const Field& K = *emb_.big();
  const int n = big.n;
  Mat M(n * b_);
  for (int k = 0; k < n; ++k) {
    Vec row = big.row(k);
    for (int i = 0; i < b_; ++i) {
      Vec scaled = vec_scale(K, zpow_[i], row);
      M.set_row(k * b_ + i, flatten(scaled));
    }
  }
  return M;
}

Mat ScalarRestriction::frobenius_linear(int n, int j) const {
  const Field& K = *emb_.big();
  Mat M(n * b_);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < b_; ++i) {
      Vec c = coords(K.frob(zpow_[i], j));
      for (int t = 0; t < b_; ++t) M(k * b_ + i, k * b_ + t) = c[t];
    }
  return M;
}

GroupElt restrict_scalars(const ScalarRestriction& rs, const Mat& big) {
  if (!mat_inverse(*rs.embedding().big(), big)) throw std::invalid_argument("restrict_scalars: singular matrix");
  return {rs.restrict(big), 0};
}

// ---------------------------------------------------------------------------
// ExtensionFrame

ExtensionFrame::ExtensionFrame(const QuadSpace& V, Kind kind, uint64_t seed)
    : small_(V.field_ptr()),
      m_(V.m()),
      kind_(kind),
      big_(Field::make(V.field().p(), 2 * V.field().f())),
      rs_(SubfieldEmbedding(V.field_ptr(), big_)),
      lambda_(find_lambda(rs_.embedding())),
      ell_(V.m() / 2) {
  if (m_ % 2) throw std::invalid_argument("extension frame needs m even");
  natural_ = form_from_function(small_, 2 * m_, [this](const Vec& v) {
    Vec x = rs_.unflatten(v);
    return kind_ == Kind::Hermitian ? rs_.embedding().restrict(hermitian(x, x))
                                    : trace_to_subfield(rs_.embedding(), qsharp(x));
  });
  Vec E1(2 * ell_, 0), F1(2 * ell_, 0);
  E1[0] = lambda_;
  F1[1] = 1;
  P_ = hyperbolic_frame(natural_, {{rs_.flatten(E1), rs_.flatten(F1)}}, seed);
  Pinv_ = *mat_inverse(*small_, P_);
}

Elt ExtensionFrame::hermitian(const Vec& x, const Vec& y) const {
  const Field& K = *big_;
  const int fs = static_cast<int>(small_->f());
  Elt s = 0;
  for (int i = 0; i < ell_; ++i) {
    s = K.add(s, K.mul(x[2 * i], K.frob(y[2 * i + 1], fs)));
    s = K.add(s, K.mul(x[2 * i + 1], K.frob(y[2 * i], fs)));
  }
  return s;
}

Elt ExtensionFrame::qsharp(const Vec& x) const {
  const Field& K = *big_;
  Elt s = 0;
  for (int i = 0; i < ell_; ++i) s = K.add(s, K.mul(x[2 * i], x[2 * i + 1]));
  return s;
}

Vec ExtensionFrame::standard(const Vec& big) const { return vec_mat(*small_, rs_.flatten(big), Pinv_); }

GroupElt ExtensionFrame::to_standard(const GroupElt& nat) const { return to_frame(*small_, P_, Pinv_, nat); }

GroupElt ExtensionFrame::lift(const Mat& big) const { return to_standard(restrict_scalars(rs_, big)); }

GroupElt ExtensionFrame::frobenius() const {
  return to_standard({rs_.frobenius_linear(2 * ell_, 1), static_cast<int>(1 % small_->f())});
}

GroupElt ExtensionFrame::reflection_sharp(const Vec& w) const {
  if (kind_ != Kind::Quadratic) throw std::logic_error("reflection_sharp needs the quadratic frame");
  return lift(reflection(QForm::hyperbolic(big_, ell_), w).A);
}

// ---------------------------------------------------------------------------
// Basic subgroups

namespace {

std::vector<GroupElt> as_elts(const std::vector<Mat>& ms) {
  std::vector<GroupElt> out;
  out.reserve(ms.size());
  for (auto& m : ms) out.push_back({m, 0});
  return out;
}

void require_isometries(const QuadSpace& V, const std::vector<GroupElt>& gens, const char* what) {
  for (auto& g : gens)
    if (!V.is_isometry(g)) throw std::logic_error(std::string(what) + ": generator does not preserve Q");
}

void require_omega(const QuadSpace& V, const std::vector<GroupElt>& gens, const char* what) {
  require_isometries(V, gens, what);
  for (auto& g : gens)
    if (g.frob == 0 && !V.dickson_invariant(g).in_omega())
      throw std::logic_error(std::string(what) + ": generator outside Omega");
}

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

GroupHandle build_omega(const QuadSpace& V) {
  auto g = as_elts(gens::omega_plus(V.field(), V.m()));
  require_omega(V, g, "build_omega");
  GroupHandle H(V.field_ptr(), V.dim(), g);
  H.set_order_bound(orders::omega_even(V.dim(), +1, V.field().q()));
  return H;
}

GroupHandle build_T(const QuadSpace& V) {
  std::vector<GroupElt> g;
  for (auto& A : gens::sl(V.field(), V.m())) g.push_back({t_element(V.field(), A), 0});
  require_omega(V, g, "build_T");
  GroupHandle H(V.field_ptr(), V.dim(), g);
  H.set_order_bound(orders::sl(V.m(), V.field().q()));
  return H;
}

GroupHandle build_R(const QuadSpace& V) {
  const Field& F = V.field();
  std::vector<GroupElt> g;
  for (int i = 1; i <= V.m(); ++i)
    for (int j = i + 1; j <= V.m(); ++j) {
      Elt c = 1;
      for (uint32_t s = 0; s < F.f(); ++s) {
        g.push_back(V.eichler(V.e(i), vec_scale(F, c, V.e(j))));
        c = F.mul(c, F.gen());
      }
    }
  require_omega(V, g, "build_R");
  GroupHandle H(V.field_ptr(), V.dim(), g);
  BigInt bound = 1;
  for (int i = 0; i < V.m() * (V.m() - 1) / 2; ++i) bound *= F.q();
  H.set_order_bound(bound);
  return H;
}

GroupElt build_gamma(const QuadSpace& V) {
  Mat M(V.dim());
  for (int i = 0; i < V.m(); ++i) M(2 * i, 2 * i + 1) = M(2 * i + 1, 2 * i) = 1;
  return {M, 0};
}

GroupElt build_phi(const QuadSpace& V) {
  return {Mat::identity(V.dim()), static_cast<int>(1 % V.field().f())};
}

std::vector<GroupElt> omega_by_reflections(const QForm& form, const BigInt& target, uint64_t seed) {
  const Field& F = form.field();
  const int n = form.dim();
  std::mt19937_64 rng(seed);
  auto random_vec = [&]() {
    Vec v(n);
    for (auto& x : v) x = static_cast<Elt>(rng() % F.q());
    return v;
  };
  EltOps ops(form.field_ptr(), n);
  std::vector<GroupElt> out;
  for (int attempt = 0; attempt < 400; ++attempt) {
    Vec a = random_vec(), b = random_vec();
    Elt qa = form.Q(a), qb = form.Q(b);
    if (!qa || !qb) continue;
    if (F.p() != 2 && !F.is_square(F.mul(qa, qb))) continue;
    GroupElt g = ops.mul(reflection(form, a), reflection(form, b));
    if (ops.is_identity(g)) continue;
    out.push_back(g);
    if (out.size() < 3) continue;
    GroupHandle H(form.field_ptr(), n, out);
    H.set_seed(seed);
    H.set_order_bound(target);
    if (H.order() == target) return out;
  }
  throw std::runtime_error("reflection products did not reach the target order");
}

// ---------------------------------------------------------------------------
// Families

namespace {

GroupHandle with_order(FieldPtr F, int n, std::vector<GroupElt> g, std::optional<BigInt> bound, uint64_t seed) {
  GroupHandle H(std::move(F), n, std::move(g));
  H.set_seed(seed);
  if (bound) H.set_order_bound(*bound);
  return H;
}

/// Generators of S < SL_m(q) as m x m matrices over GF(q), with |S| when known.
std::pair<std::vector<Mat>, std::optional<BigInt>> s_generators(const QuadSpace& V, const FamilySpec& spec,
                                                                uint64_t seed) {
  const FieldPtr& k = V.field_ptr();
  const int m = V.m();
  const int b = spec.b;
  const bool g2 = spec.S == "G2" || spec.S == "G2'";
  const int a = spec.a ? spec.a : (g2 ? 6 : m / b);
  const int need = g2 ? 6 * b : a * b;
  if (need != m) throw std::invalid_argument("family parameters do not match m");
  FieldPtr K = b == 1 ? k : Field::make(k->p(), k->f() * b);
  std::vector<Mat> big;
  if (spec.S == "SL") {
    big = gens::sl(*K, a);
  } else if (spec.S == "Sp" || spec.S == "Sp'") {
    big = gens::sp(*K, a);
  } else if (g2) {
    big = build_G2(K, seed).gens6;
  } else {
    throw std::invalid_argument("unknown S: " + spec.S);
  }
  std::vector<Mat> small;
  if (b == 1) {
    small = big;
  } else {
    ScalarRestriction rs(SubfieldEmbedding(k, K));
    for (auto& M : big) small.push_back(rs.restrict(M));
  }
  std::optional<BigInt> order;
  const uint64_t Q = K->q();
  if (spec.S == "SL") order = orders::sl(a, Q);
  if (spec.S == "Sp") order = orders::sp(a, Q);
  if (spec.S == "G2") order = orders::g2(Q);
  if (spec.S == "Sp'" || spec.S == "G2'") {
    GroupHandle H(k, m, as_elts(small));
    H.set_seed(seed);
    if (spec.S == "Sp'") H.set_order_bound(orders::sp(a, Q));
    if (spec.S == "G2'") H.set_order_bound(orders::g2(Q));
    GroupHandle D = derived_subgroup(H);
    small.clear();
    for (auto& g : D.generators()) small.push_back(g.A);
    order = D.order();
  }
  return {small, order};
}

std::vector<GroupElt> lift_t(const Field& F, const std::vector<Mat>& ms) {
  std::vector<GroupElt> out;
  for (auto& A : ms) out.push_back({t_element(F, A), 0});
  return out;
}

void add_extra(const QuadSpace& V, std::vector<GroupElt>& g, const std::string& extra) {
  if (extra.empty()) return;
  if (extra == "gamma") {
    g.push_back(build_gamma(V));
  } else if (extra == "phi") {
    g.push_back(build_phi(V));
  } else {
    throw std::invalid_argument("unsupported extra element: " + extra);
  }
}

/// Symplectic form of Sp_m in the layout p1,q1,...
Elt symp(const Field& F, const Vec& x, const Vec& y) {
  Elt s = 0;
  for (size_t i = 0; i + 1 < x.size(); i += 2)
    s = F.add(s, F.sub(F.mul(x[i], y[i + 1]), F.mul(x[i + 1], y[i])));
  return s;
}

GroupHandle tensor_family(const QuadSpace& V, bool full, uint64_t seed) {
  const Field& F = V.field();
  const int m = V.m(), n = 2 * m;
  if (m % 2) throw std::invalid_argument("tensor family needs m even");
  // natural index k*m + j for e_k (x) w_j; Q(a (x) v + b (x) w) = B(v, w)
  Mat U(n);
  for (int j = 0; j < m; ++j)
    for (int jj = 0; jj < m; ++jj) {
      Vec x(m, 0), y(m, 0);
      x[j] = 1;
      y[jj] = 1;
      U(j, m + jj) = symp(F, x, y);
    }
  QForm nat(V.field_ptr(), U);
  std::vector<GroupElt> natg;
  auto kron = [&](const Mat& h, const Mat& g) {
    Mat M(n);
    for (int k = 0; k < 2; ++k)
      for (int kk = 0; kk < 2; ++kk)
        for (int j = 0; j < m; ++j)
          for (int jj = 0; jj < m; ++jj) M(k * m + j, kk * m + jj) = F.mul(h(k, kk), g(j, jj));
    return M;
  };
  for (auto& g : gens::sp(F, m)) natg.push_back({kron(Mat::identity(2), g), 0});
  if (full)
    for (auto& h : gens::sp(F, 2)) natg.push_back({kron(h, Mat::identity(m)), 0});
  for (auto& g : natg)
    if (!nat.preserved_by(g)) throw std::logic_error("tensor generator does not preserve the tensor form");
  Mat P = hyperbolic_frame(nat, {}, seed);
  Mat Pinv = *mat_inverse(F, P);
  std::vector<GroupElt> g;
  for (auto& x : natg) g.push_back(to_frame(F, P, Pinv, x));
  require_omega(V, g, "Sp_tensor");
  return with_order(V.field_ptr(), V.dim(), g, std::nullopt, seed);
}

}  // namespace

GroupHandle build_family(const QuadSpace& V, const FamilySpec& spec, uint64_t seed) {
  const Field& F = V.field();
  const FieldPtr& Fp = V.field_ptr();
  const int m = V.m();
  const std::string& fam = spec.family;

  if (fam == "R_semidirect_S" || fam == "SL_ext_in_T") {
    auto [s, sorder] = s_generators(V, spec, seed);
    std::vector<GroupElt> g = lift_t(F, s);
    std::optional<BigInt> bound = sorder;
    if (fam == "R_semidirect_S") {
      GroupHandle R = build_R(V);
      for (auto& r : R.generators()) g.push_back(r);
      if (bound) *bound *= *R.order_bound();
    }
    require_omega(V, g, fam.c_str());
    if (spec.extra == "field" || spec.extra == "field_gamma") {
      // the GF(q^b)/GF(q) Frobenius on U, acting on W by the inverse transpose
      if (spec.b == 1) throw std::invalid_argument("extra 'field' needs b > 1");
      ScalarRestriction rs(SubfieldEmbedding(Fp, Field::make(F.p(), F.f() * spec.b)));
      GroupElt s{t_element(F, rs.frobenius_linear(m / spec.b, static_cast<int>(F.f()))), 0};
      if (spec.extra == "field_gamma") s = V.ops().mul(s, build_gamma(V));
      require_isometries(V, {s}, "field extra");
      g.push_back(s);
    } else {
      add_extra(V, g, spec.extra);
    }
    if (!spec.extra.empty()) bound.reset();
    return with_order(Fp, V.dim(), g, bound, seed);
  }
  if (fam == "T_full") {
    GroupHandle T = build_T(V);
    std::vector<GroupElt> g = T.generators();
    add_extra(V, g, spec.extra);
    std::optional<BigInt> bound = *T.order_bound();
    if (!spec.extra.empty()) bound.reset();
    return with_order(Fp, V.dim(), g, bound, seed);
  }
  if (fam == "SU_half") {
    ExtensionFrame X(V, ExtensionFrame::Kind::Hermitian, seed);
    std::vector<GroupElt> g;
    for (auto& M : gens::su_even(X.restriction().embedding(), X.ell())) g.push_back(X.lift(M));
    require_omega(V, g, "SU_half");
    std::optional<BigInt> bound = orders::su(m, F.q());
    if (spec.extra == "xi") {
      g.push_back(X.frobenius());
      require_isometries(V, {g.back()}, "SU_half xi");
      bound.reset();
    } else if (!spec.extra.empty()) {
      throw std::invalid_argument("SU_half extra must be xi");
    }
    return with_order(Fp, V.dim(), g, bound, seed);
  }
  if (fam == "Omega_half_ext") {
    ExtensionFrame X(V, ExtensionFrame::Kind::Quadratic, seed);
    std::vector<GroupElt> g;
    for (auto& M : gens::omega_plus(X.big(), X.ell())) g.push_back(X.lift(M));
    require_omega(V, g, "Omega_half_ext");
    std::optional<BigInt> bound = orders::omega_even(m, +1, ipow(F.q(), 2));
    if (!spec.extra.empty()) {
      GroupElt psi = X.frobenius();
      Vec w(2 * X.ell(), 0);
      w[0] = w[1] = 1;  // E1 + F1
      GroupElt psi_r = V.ops().mul(psi, X.reflection_sharp(w));
      GroupElt rho;
      if (spec.extra == "psi") {
        rho = psi;
      } else if (spec.extra == "psi_r") {
        rho = psi_r;
      } else if (spec.extra == "rho") {
        // whichever of psi and psi r'_{E1+F1} lies in Omega; both are linear when q is prime
        if (psi.frob == 0 && V.dickson_invariant(psi).in_omega()) {
          rho = psi;
        } else if (psi_r.frob == 0 && V.dickson_invariant(psi_r).in_omega()) {
          rho = psi_r;
        } else {
          throw std::logic_error("neither psi nor psi r' lies in Omega");
        }
      } else {
        throw std::invalid_argument("Omega_half_ext extra must be psi, psi_r or rho");
      }
      require_isometries(V, {rho}, "Omega_half_ext extra");
      g.push_back(rho);
      bound.reset();
    }
    return with_order(Fp, V.dim(), g, bound, seed);
  }
  if (fam == "Sp_tensor") return tensor_family(V, true, seed);
  if (fam == "Sp_in_T") {
    if (m % 2) throw std::invalid_argument("Sp_in_T needs m even");
    if (spec.container == "T") {
      auto g = lift_t(F, gens::sp(F, m));
      require_omega(V, g, "Sp_in_T");
      return with_order(Fp, V.dim(), g, orders::sp(m, F.q()), seed);
    }
    if (spec.container == "SU") {
      if (F.p() != 2) throw std::invalid_argument("Sp_in_T inside SU needs q even");
      ExtensionFrame X(V, ExtensionFrame::Kind::Hermitian, seed);
      const auto& emb = X.restriction().embedding();
      std::vector<GroupElt> g;
      for (auto& M : gens::sp(F, m)) {
        Mat B(m);
        for (size_t i = 0; i < M.a.size(); ++i) B.a[i] = emb(M.a[i]);
        g.push_back(X.lift(B));
      }
      require_omega(V, g, "Sp_in_T(SU)");
      return with_order(Fp, V.dim(), g, orders::sp(m, F.q()), seed);
    }
    if (spec.container == "tensor") {
      GroupHandle H = tensor_family(V, false, seed);
      H.set_order_bound(orders::sp(m, F.q()));
      return H;
    }
    throw std::invalid_argument("Sp_in_T container must be T, SU or tensor");
  }
  if (fam == "subfield_minus") {
    if (F.f() % 2) throw std::invalid_argument("subfield_minus needs q a square");
    FieldPtr k0 = Field::make(F.p(), F.f() / 2);
    SubfieldEmbedding emb(k0, Fp);
    const int n = V.dim();
    Mat U(n);
    for (int i = 0; i + 1 < m; ++i) U(2 * i, 2 * i + 1) = 1;
    U(n - 2, n - 2) = 1;
    U(n - 2, n - 1) = 1;
    U(n - 1, n - 1) = find_mu(*k0);
    QForm small_form(k0, U);
    auto sg = omega_by_reflections(small_form, orders::omega_even(n, -1, k0->q()), seed);
    Mat Ubig(n);
    for (size_t i = 0; i < U.a.size(); ++i) Ubig.a[i] = emb(U.a[i]);
    QForm big_form(Fp, Ubig);
    Mat P = hyperbolic_frame(big_form, {}, seed);
    Mat Pinv = *mat_inverse(F, P);
    std::vector<GroupElt> g;
    for (auto& x : sg) {
      Mat B(n);
      for (size_t i = 0; i < x.A.a.size(); ++i) B.a[i] = emb(x.A.a[i]);
      g.push_back(to_frame(F, P, Pinv, {B, 0}));
    }
    require_omega(V, g, "subfield_minus");
    return with_order(Fp, V.dim(), g, orders::omega_even(n, -1, k0->q()), seed);
  }
  if (fam == "N1_stab") {
    GroupHandle Om = build_omega(V);
    Om.set_seed(seed);
    return Om.stabilizer(V.parse("e1+f1"));
  }
  if (fam == "N2_minus_stab") {
    GroupHandle Om = build_omega(V);
    Om.set_seed(seed);
    return Om.stabilizer(std::vector<PointSpec>{Om.point_of(V.parse("e1+f1")), Om.point_of(V.u())});
  }
  if (fam == "spin_copy") return spin_copy(spec.group_dim, V, spec.sub, seed);
  if (fam == "half_spin_minus") return half_spin_minus(V, seed);
  if (fam == "G2_octonion") {
    if (spec.container != "T" || m != 6) throw std::invalid_argument("G2_octonion is built inside T with m = 6");
    auto G = build_G2(Fp, seed);
    auto g = lift_t(F, G.gens6);
    require_omega(V, g, "G2_octonion");
    return with_order(Fp, V.dim(), g, orders::g2(F.q()), seed);
  }
  if (fam == "ingested") {
    GroupHandle H = ingest(spec.path);
    if (H.dim() != V.dim() || H.field().q() != F.q()) throw std::invalid_argument("ingested group does not match the space");
    require_isometries(V, H.generators(), "ingested");
    return H;
  }
  throw std::invalid_argument("unknown family: " + fam);
}

}  // namespace plusfact
