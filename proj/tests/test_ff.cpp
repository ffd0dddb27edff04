#include <set>

#include "doctest.h"
#include "plusfact/ff.hpp"

using namespace plusfact;

namespace {

// Field axioms by exhaustive check on small fields.
void check_axioms(const Field& F) {
  uint32_t q = F.q();
  for (Elt a = 0; a < q; ++a) {
    CHECK(F.add(a, 0) == a);
    CHECK(F.mul(a, 1) == a);
    CHECK(F.add(a, F.neg(a)) == 0);
    if (a) CHECK(F.mul(a, F.inv(a)) == 1);
    for (Elt b = 0; b < q; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      for (Elt c = 0; c < q; c += 3) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

}  // namespace

TEST_CASE("field axioms") {
  for (auto [p, f] : {std::pair{2u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 1u}, {3u, 2u}, {5u, 1u}, {7u, 2u}}) {
    auto F = Field::make(p, f);
    CAPTURE(F->name());
    CHECK(F->q() == [&] {
      uint32_t r = 1;
      for (uint32_t i = 0; i < f; ++i) r *= p;
      return r;
    }());
    check_axioms(*F);
  }
}

TEST_CASE("generator is primitive and Frobenius is a field automorphism") {
  auto F = Field::make(2, 4);
  std::set<Elt> seen;
  Elt x = 1;
  for (uint32_t i = 0; i + 1 < F->q(); ++i) {
    seen.insert(x);
    x = F->mul(x, F->gen());
  }
  CHECK(seen.size() == F->q() - 1);
  CHECK(x == 1);
  for (Elt a = 0; a < F->q(); ++a) {
    CHECK(F->frob(a, 4) == a);
    CHECK(F->frob(a, 1) == F->mul(a, a));
    for (Elt b = 0; b < F->q(); ++b) CHECK(F->frob(F->add(a, b), 1) == F->add(F->frob(a, 1), F->frob(b, 1)));
  }
}

TEST_CASE("squares and square roots") {
  for (auto [p, f] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {2u, 3u}}) {
    auto F = Field::make(p, f);
    std::set<Elt> sq;
    for (Elt a = 0; a < F->q(); ++a) sq.insert(F->mul(a, a));
    for (Elt a = 0; a < F->q(); ++a) {
      CHECK(F->is_square(a) == (sq.count(a) == 1));
      if (F->is_square(a)) CHECK(F->mul(F->sqrt(a), F->sqrt(a)) == a);
    }
  }
}

TEST_CASE("large field without tables") {
  auto F = Field::make(2, 20);
  CHECK_FALSE(F->has_tables());
  Elt a = 123457, b = 987;
  CHECK(F->mul(F->div(a, b), b) == a);
  CHECK(F->pow(a, F->q() - 1) == 1);
  CHECK(F->frob(a, 20) == a);
}

TEST_CASE("rejects bad parameters") {
  CHECK_THROWS_AS(Field::make(4, 1), FieldError);
  CHECK_THROWS_AS(Field::make(2, 21), FieldError);
  CHECK_THROWS_AS(Field::make(1, 1), FieldError);
}

TEST_CASE("primality and irreducibility") {
  CHECK(is_prime(2));
  CHECK(is_prime(1048573));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(poly_irreducible({1, 1, 1}, 2));      // x^2+x+1
  CHECK_FALSE(poly_irreducible({1, 0, 1}, 2));  // (x+1)^2
  CHECK(poly_irreducible({1, 1, 0, 1}, 2));   // x^3+x+1
  CHECK(poly_irreducible({1, 0, 1}, 3));      // x^2+1 over GF(3)
  CHECK_FALSE(poly_irreducible({1, 0, 1}, 5));
}

TEST_CASE("subfield embedding is a ring map onto the fixed field") {
  auto small = Field::make(2, 2), big = Field::make(2, 4);
  SubfieldEmbedding emb(small, big);
  std::set<Elt> image;
  for (Elt a = 0; a < small->q(); ++a) {
    image.insert(emb(a));
    CHECK(big->in_subfield(emb(a), 2));
    CHECK(emb.restrict(emb(a)) == a);
    for (Elt b = 0; b < small->q(); ++b) {
      CHECK(emb(small->mul(a, b)) == big->mul(emb(a), emb(b)));
      CHECK(emb(small->add(a, b)) == big->add(emb(a), emb(b)));
    }
  }
  CHECK(image.size() == 4);
  Elt outside = 0;
  for (Elt x = 0; x < big->q(); ++x)
    if (!big->in_subfield(x, 2)) {
      outside = x;
      break;
    }
  CHECK_THROWS(emb.restrict(outside));
}

TEST_CASE("mu and lambda") {
  for (auto [p, f] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}, {5u, 1u}}) {
    auto F = Field::make(p, f);
    Elt mu = find_mu(*F);
    CHECK(mu != 0);
    for (Elt x = 0; x < F->q(); ++x) CHECK(F->add(F->add(F->mul(x, x), x), mu) != 0);
    auto F2 = Field::make(p, 2 * f);
    SubfieldEmbedding emb(F, F2);
    Elt lam = find_lambda(emb);
    CHECK(trace_to_subfield(emb, lam) == 1);
  }
}
