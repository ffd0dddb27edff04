#include "doctest.h"
#include "oracles.hpp"
#include "plusfact/grpcore.hpp"
#include "plusfact/quadspace.hpp"

using namespace plusfact;

namespace {

Mat mat(int n, std::initializer_list<Elt> entries) {
  Mat A(n);
  size_t k = 0;
  for (Elt x : entries) A.a[k++] = x;
  return A;
}

// GL_n(p) from a transvection and an n-cycle-with-scalar.
std::vector<GroupElt> gl_gens(uint32_t p, int n) {
  Mat t = Mat::identity(n);
  t(0, 1) = 1;
  Mat c(n);
  for (int i = 0; i < n; ++i) c(i, (i + 1) % n) = 1;
  Mat d = Mat::identity(n);
  d(0, 0) = p == 2 ? 1 : Field::make(p, 1)->gen();
  return {{t, 0}, {c, 0}, {d, 0}};
}

}  // namespace

TEST_CASE("orders of general linear groups") {
  for (auto [p, n] : {std::pair{2u, 3}, {3u, 2}, {2u, 4}, {5u, 2}, {3u, 3}}) {
    GroupHandle G(Field::make(p, 1), n, gl_gens(p, n));
    CAPTURE(p);
    CAPTURE(n);
    CHECK(G.order() == oracle::gl(n, p));
  }
}

TEST_CASE("orbit-stabilizer and membership") {
  auto F = Field::make(3, 1);
  GroupHandle G(F, 3, gl_gens(3, 3));
  Vec v{1, 0, 0};
  auto orb = G.orbit(v);
  CHECK(orb.size() == 26);
  auto S = G.stabilizer(v);
  CHECK(S.order() * 26 == G.order());
  for (auto& g : S.generators()) CHECK(G.ops().apply(v, g) == v);
  CHECK(G.is_member(G.random_element(7)));
  CHECK(S.is_member(S.random_element(3)));
  // (0,1,0) -> (1,0,0) is not in the stabilizer of (1,0,0)
  CHECK_FALSE(S.is_member({mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}), 0}));
}

TEST_CASE("pointwise and setwise stabilizers") {
  auto F = Field::make(2, 1);
  GroupHandle G(F, 3, gl_gens(2, 3));
  Vec a{1, 0, 0}, b{0, 1, 0};
  auto pw2 = G.stabilizer(std::vector<PointSpec>{PointSpec::vector(a), PointSpec::vector(b)});
  // fixing two independent vectors of GF(2)^3 leaves the 4 choices of the third image
  CHECK(pw2.order() == 4);
  auto sw = G.stabilizer(PointSpec::vecset({a, b}));
  CHECK(sw.order() == 8);
}

TEST_CASE("projective action and derived subgroup") {
  auto F = Field::make(5, 1);
  GroupHandle G(F, 2, gl_gens(5, 2));
  auto D = derived_subgroup(G);
  CHECK(D.order() == oracle::sl(2, 5));
  GroupHandle P(F, 2, D.generators(), GroupHandle::Mode::Projective);
  CHECK(P.order() == 60);
  CHECK(P.orbit(Vec{1, 0}).size() == 6);
}

TEST_CASE("semilinear elements") {
  auto F = Field::make(2, 2);
  Mat w = Mat::identity(1);
  w(0, 0) = F->gen();
  GroupHandle G(F, 1, {{w, 0}, {Mat::identity(1), 1}});
  CHECK(G.order() == 6);
  CHECK(G.orbit(Vec{1}).size() == 3);
  auto x = G.ops().mul({Mat::identity(1), 1}, {w, 0});
  CHECK(G.ops().order(x) == 2);
  CHECK(G.is_member(x));
}

TEST_CASE("stabilizer of a quadratic form") {
  auto F = Field::make(2, 1);
  GroupHandle G(F, 4, gl_gens(2, 4));
  auto H = QForm::hyperbolic(F, 2);
  auto O = G.stabilizer(PointSpec::qform(H.upper()));
  CHECK(O.order() == oracle::o_even(2, +1, 2));
  for (auto& g : O.generators()) CHECK(H.preserved_by(g));
}

TEST_CASE("known order bound and conjugation") {
  auto F = Field::make(3, 1);
  GroupHandle G(F, 3, gl_gens(3, 3));
  G.set_known_order(oracle::gl(3, 3));
  CHECK(G.order() == oracle::gl(3, 3));
  auto S = G.stabilizer(Vec{1, 0, 0});
  auto g = G.random_element(11);
  auto Sg = S.conjugate(g);
  CHECK(Sg.order() == S.order());
  Vec img = G.ops().apply(Vec{1, 0, 0}, g);
  for (auto& h : Sg.generators()) CHECK(G.ops().apply(img, h) == img);
}

TEST_CASE("budget is enforced") {
  auto F = Field::make(3, 1);
  GroupHandle G(F, 4, gl_gens(3, 4));
  G.set_budget(1024);
  CHECK_THROWS_AS(G.order(), BudgetExceeded);
}

TEST_CASE("chain is reproducible for a fixed seed") {
  auto F = Field::make(2, 1);
  GroupHandle A(F, 4, gl_gens(2, 4)), B(F, 4, gl_gens(2, 4));
  A.set_seed(5);
  B.set_seed(5);
  const auto& ca = A.chain();
  const auto& cb = B.chain();
  REQUIRE(ca.levels.size() == cb.levels.size());
  for (size_t i = 0; i < ca.levels.size(); ++i) CHECK(ca.levels[i].orbit == cb.levels[i].orbit);
}
