#include "plusfact/octonions.hpp"

#include <random>
#include <stdexcept>

#include "plusfact/constructions.hpp"
#include "plusfact/orders.hpp"

namespace plusfact {

namespace {

Elt dot3(const Field& F, const Elt* x, const Elt* y) {
  Elt s = 0;
  for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(x[i], y[i]));
  return s;
}

void cross3(const Field& F, const Elt* x, const Elt* y, Elt* out) {
  out[0] = F.sub(F.mul(x[1], y[2]), F.mul(x[2], y[1]));
  out[1] = F.sub(F.mul(x[2], y[0]), F.mul(x[0], y[2]));
  out[2] = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]));
}

}  // namespace

Octonions::Octonions(FieldPtr F) : F_(std::move(F)) {
  table_.resize(64);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) table_[8 * i + j] = mul(basis(i), basis(j));
}

Vec Octonions::one() const {
  Vec x(8, 0);
  x[0] = x[7] = 1;
  return x;
}

Vec Octonions::basis(int i) const {
  Vec x(8, 0);
  x.at(i) = 1;
  return x;
}

Vec Octonions::mul(const Vec& x, const Vec& y) const {
  const Field& F = *F_;
  const Elt a = x[0], b = x[7], a2 = y[0], b2 = y[7];
  const Elt *v = &x[1], *w = &x[4], *v2 = &y[1], *w2 = &y[4];
  Vec r(8, 0);
  r[0] = F.add(F.mul(a, a2), dot3(F, v, w2));
  r[7] = F.add(F.mul(b, b2), dot3(F, w, v2));
  Elt c[3];
  cross3(F, w, w2, c);
  for (int i = 0; i < 3; ++i) r[1 + i] = F.sub(F.add(F.mul(a, v2[i]), F.mul(b2, v[i])), c[i]);
  cross3(F, v, v2, c);
  for (int i = 0; i < 3; ++i) r[4 + i] = F.add(F.add(F.mul(a2, w[i]), F.mul(b, w2[i])), c[i]);
  return r;
}

Elt Octonions::norm(const Vec& x) const {
  const Field& F = *F_;
  return F.sub(F.mul(x[0], x[7]), dot3(F, &x[1], &x[4]));
}

Elt Octonions::trace(const Vec& x) const { return F_->add(x[0], x[7]); }

Vec Octonions::conj(const Vec& x) const {
  const Field& F = *F_;
  Vec r(8);
  r[0] = x[7];
  r[7] = x[0];
  for (int i = 1; i < 7; ++i) r[i] = F.neg(x[i]);
  return r;
}

Vec Octonions::inverse(const Vec& x) const {
  Elt n = norm(x);
  if (!n) throw std::invalid_argument("octonion has norm zero");
  return vec_scale(*F_, F_->inv(n), conj(x));
}

QForm Octonions::norm_form() const {
  return form_from_function(F_, 8, [this](const Vec& v) { return norm(v); });
}

bool Octonions::is_automorphism(const Mat& g) const {
  const Field& F = *F_;
  std::vector<Vec> img(8);
  for (int i = 0; i < 8; ++i) img[i] = g.row(i);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      Vec lhs = vec_mat(F, table_[8 * i + j], g);
      if (lhs != mul(img[i], img[j])) return false;
    }
  return true;
}

Mat Octonions::inner(const Vec& a) const {
  Vec ai = inverse(a);
  Mat M(8);
  for (int i = 0; i < 8; ++i) M.set_row(i, mul(mul(a, basis(i)), ai));
  return M;
}

Mat g2_quotient(const Field& F, const Mat& g8) {
  if (F.p() != 2) throw std::invalid_argument("the 6-dimensional quotient needs q even");
  static const int idx[6] = {1, 4, 2, 5, 3, 6};
  Mat M(6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) M(r, c) = g8(idx[r], idx[c]);
  return M;
}

namespace {

Mat sl3_to_g2(const Field& F, const Mat& A) {
  Mat M(8);
  M(0, 0) = M(7, 7) = 1;
  auto Ai = mat_inverse(F, A);
  Mat B = mat_transpose(*Ai);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      M(1 + i, 1 + j) = A(i, j);
      M(4 + i, 4 + j) = B(i, j);
    }
  return M;
}

}  // namespace

G2Group build_G2(const FieldPtr& Fp, uint64_t seed) {
  const Field& F = *Fp;
  if (F.p() != 2) throw std::invalid_argument("G2 construction supports q even only");
  Octonions O(Fp);
  G2Group G;
  G.seed = seed;
  for (auto& A : gens::sl(F, 3)) {
    Mat g = sl3_to_g2(F, A);
    if (!O.is_automorphism(g)) throw std::logic_error("SL3 element is not an octonion automorphism");
    G.gens8.push_back(g);
  }
  // (a,v,w,b) -> (b,w,v,a); for q = 2 this lies outside the derived group
  Mat swap(8);
  swap(0, 7) = swap(7, 0) = 1;
  for (int i = 0; i < 3; ++i) swap(1 + i, 4 + i) = swap(4 + i, 1 + i) = 1;
  if (!O.is_automorphism(swap)) throw std::logic_error("swap is not an octonion automorphism");
  G.gens8.push_back(swap);
  const BigInt target = orders::g2(F.q());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> coef(0, F.q() - 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    // a = (alpha, v, w, 1 - alpha) with N(a) = 1, so a^2 - a + 1 = 0 and a^3 = -1
    Elt alpha = coef(rng);
    Vec v(3), w(3, 0);
    for (auto& x : v) x = coef(rng);
    if (v[0] == 0) continue;
    Elt rest = F.sub(F.mul(alpha, F.sub(1, alpha)), 1);  // v.w must equal this
    w[1] = coef(rng);
    w[2] = coef(rng);
    Elt partial = F.add(F.mul(v[1], w[1]), F.mul(v[2], w[2]));
    w[0] = F.div(F.sub(rest, partial), v[0]);
    Vec a(8);
    a[0] = alpha;
    a[7] = F.sub(1, alpha);
    for (int i = 0; i < 3; ++i) {
      a[1 + i] = v[i];
      a[4 + i] = w[i];
    }
    if (O.norm(a) != 1 || O.trace(a) != 1) continue;
    Mat g = O.inner(a);
    if (!O.is_automorphism(g)) continue;
    G.gens8.push_back(g);
    G.gens6.clear();
    for (auto& h : G.gens8) G.gens6.push_back(g2_quotient(F, h));
    GroupHandle H = g2_handle(Fp, G);
    H.set_seed(seed);
    if (H.order() == target) return G;
  }
  throw std::runtime_error("G2 generators did not reach the expected order");
}

GroupHandle g2_handle(const FieldPtr& F, const G2Group& G) {
  std::vector<GroupElt> gens;
  for (auto& m : G.gens6) gens.push_back({m, 0});
  GroupHandle H(F, 6, gens);
  H.set_seed(G.seed ? G.seed : 1);
  return H;
}

QForm symplectic_quadratic(const FieldPtr& F, int eps) {
  Mat M(6);
  for (int i = 0; i < 3; ++i) M(2 * i, 2 * i + 1) = 1;
  if (eps < 0) {
    M(4, 4) = 1;
    M(5, 5) = find_mu(*F);
  }
  return QForm(F, M);
}

}  // namespace plusfact
