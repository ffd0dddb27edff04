#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plusfact/constructions.hpp"

using namespace plusfact;

namespace {

QuadSpace space(uint32_t p, uint32_t f, int m) { return QuadSpace(Field::make(p, f), m); }

bool preserves_on_samples(const QuadSpace& V, const GroupHandle& H) {
  for (auto& g : H.generators())
    if (!V.is_isometry(g)) return false;
  return true;
}

}  // namespace

TEST_CASE("ambient Omega and its point stabilizer at m=4, q=2") {
  auto V = space(2, 1, 4);
  auto Om = build_omega(V);
  CHECK(Om.order() == oracle::omega_even(4, +1, 2));
  auto orb = Om.orbit(V.parse("e1+f1"));
  // nonsingular vectors with Q = 1: q^{2m-1} - q^{m-1}
  CHECK(orb.size() == 120);
  auto N1 = Om.stabilizer(V.parse("e1+f1"));
  CHECK(N1.order() * 120 == Om.order());
  CHECK(N1.order() == oracle::sp(6, 2));
}

TEST_CASE("T and R") {
  for (auto [p, m] : {std::pair{2u, 4}, std::pair{3u, 4}}) {
    auto V = space(p, 1, m);
    auto T = build_T(V);
    CHECK(T.order() == oracle::sl(m, p));
    CHECK(preserves_on_samples(V, T));
    for (auto& g : T.generators()) {
      // W-block is the inverse transpose of the U-block
      Mat A(m), B(m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          A(i, j) = g.A(2 * i, 2 * j);
          B(i, j) = g.A(2 * i + 1, 2 * j + 1);
        }
      CHECK(mat_mul(V.field(), A, mat_transpose(B)).is_identity());
    }
    auto orbit = T.orbit(V.e(1));
    for (auto& k : orbit.points()) {
      Vec v = vec_decode(k.w[0], V.dim(), V.field().q());
      for (int i = 0; i < m; ++i) CHECK(v[2 * i + 1] == 0);
    }
    auto R = build_R(V);
    CHECK(R.order() == oracle::pw(p, m * (m - 1) / 2));
    for (auto& g : R.generators())
      for (int i = 1; i <= m; ++i) CHECK(V.ops().apply(V.e(i), g) == V.e(i));
  }
}

TEST_CASE("R and T meet the stabilizer of e1+f1 as expected") {
  for (auto [p, m] : {std::pair{2u, 4}, std::pair{3u, 4}, std::pair{2u, 5}}) {
    auto V = space(p, 1, m);
    auto R = build_R(V);
    auto orb = R.orbit(V.parse("e1+f1"));
    CHECK(R.order() / orb.size() == oracle::pw(p, (m - 1) * (m - 2) / 2));
  }
  for (uint32_t p : {2u, 3u}) {
    auto V = space(p, 1, 4);
    auto T = build_T(V);
    auto orb = T.orbit(V.parse("e1+f1"));
    CHECK(T.order() / orb.size() == oracle::sl(3, p));
  }
}

TEST_CASE("gamma and phi") {
  for (int m : {4, 5}) {
    auto V = space(2, 1, m);
    auto g = build_gamma(V);
    CHECK(V.ops().mul(g, g) == V.ops().identity());
    CHECK(V.is_isometry(g));
    CHECK(V.dickson_invariant(g).parity == m % 2);
  }
  auto V = space(2, 2, 4);
  auto phi = build_phi(V);
  CHECK(V.ops().order(phi) == 2);
  CHECK(V.is_isometry(phi));
}

TEST_CASE("restrict_scalars") {
  auto k = Field::make(2, 1), K = Field::make(2, 2);
  ScalarRestriction rs(SubfieldEmbedding(k, K));
  Mat lam(1);
  lam(0, 0) = K->gen();
  Mat M = rs.restrict(lam);
  // characteristic polynomial x^2 + tr x + det with tr = det = 1
  CHECK(M.n == 2);
  CHECK(k->add(M(0, 0), M(1, 1)) == 1);
  CHECK(mat_det(*k, M) == 1);
  CHECK(rs.restrict(Mat::identity(3)).is_identity());

  std::mt19937_64 rng(7);
  auto K9 = Field::make(3, 2), k3 = Field::make(3, 1);
  ScalarRestriction rs3(SubfieldEmbedding(k3, K9));
  for (int t = 0; t < 20; ++t) {
    Mat A(3), B(3);
    for (auto& x : A.a) x = rng() % 9;
    for (auto& x : B.a) x = rng() % 9;
    CHECK(rs3.restrict(mat_mul(*K9, A, B)) == mat_mul(*k3, rs3.restrict(A), rs3.restrict(B)));
  }
}

TEST_CASE("extension frames satisfy the form identities") {
  for (auto kind : {ExtensionFrame::Kind::Hermitian, ExtensionFrame::Kind::Quadratic}) {
    auto V = space(2, 1, 4);
    ExtensionFrame X(V, kind);
    const Field& K = X.big();
    Vec E1(4, 0), F1(4, 0);
    E1[0] = X.lambda();
    F1[1] = 1;
    CHECK(V.eval_Q(X.standard(E1)) == 0);
    CHECK(V.eval_Q(X.standard(F1)) == 0);
    CHECK(V.eval_beta(X.standard(E1), X.standard(F1)) == 1);
    CHECK(X.standard(E1) == V.e(1));
    CHECK(X.standard(F1) == V.f(1));
    // all 256 vectors of V_sharp = GF(4)^4
    for (uint64_t c = 0; c < 256; ++c) {
      Vec x = vec_decode(c, 4, 4);
      Elt expect = kind == ExtensionFrame::Kind::Hermitian
                       ? X.restriction().embedding().restrict(X.hermitian(x, x))
                       : trace_to_subfield(X.restriction().embedding(), X.qsharp(x));
      CHECK(V.eval_Q(X.standard(x)) == expect);
    }
    (void)K;
  }
}

TEST_CASE("family orders") {
  auto V = space(2, 1, 4);
  FamilySpec s;
  s.family = "R_semidirect_S";
  s.S = "SL";
  CHECK(build_family(V, s).order() == oracle::pw(2, 6) * oracle::sl(4, 2));

  s = {};
  s.family = "SU_half";
  auto SU = build_family(V, s);
  CHECK(SU.order() == oracle::su(4, 2));
  CHECK(SU.order() == 25920);
  CHECK(preserves_on_samples(V, SU));

  for (std::string c : {"T", "SU", "tensor"}) {
    s = {};
    s.family = "Sp_in_T";
    s.container = c;
    CHECK(build_family(V, s).order() == oracle::sp(4, 2));
  }

  s = {};
  s.family = "Omega_half_ext";
  CHECK(build_family(V, s).order() == oracle::omega_even(2, +1, 4));

  s = {};
  s.family = "Sp_tensor";
  CHECK(build_family(V, s).order() == oracle::sp(2, 2) * oracle::sp(4, 2));
}

TEST_CASE("subfield minus-type subgroup") {
  auto V = space(2, 2, 4);
  FamilySpec s;
  s.family = "subfield_minus";
  auto H = build_family(V, s);
  CHECK(H.order() == oracle::omega_even(4, -1, 2));
  CHECK(H.order() == 197406720);
}
