#include "plusfact/elt.hpp"

#include <stdexcept>

namespace plusfact {

GroupElt EltOps::mul(const GroupElt& x, const GroupElt& y) const {
  const int f = static_cast<int>(F_->f());
  if (y.frob == 0) return {mat_mul(*F_, x.A, y.A), x.frob};
  return {mat_mul(*F_, mat_frob(*F_, x.A, y.frob), y.A), (x.frob + y.frob) % f};
}

GroupElt EltOps::inv(const GroupElt& x) const {
  const int f = static_cast<int>(F_->f());
  int j = x.frob;
  auto Ai = mat_inverse(*F_, mat_frob(*F_, x.A, -j));
  if (!Ai) throw std::invalid_argument("singular group element");
  return {std::move(*Ai), (f - j) % f};
}

GroupElt EltOps::pow(GroupElt x, uint64_t e) const {
  GroupElt r = identity();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

GroupElt EltOps::conj(const GroupElt& x, const GroupElt& g) const { return mul(mul(inv(g), x), g); }

GroupElt EltOps::comm(const GroupElt& x, const GroupElt& y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

Vec EltOps::apply(const Vec& v, const GroupElt& x) const {
  if (x.frob == 0) return vec_mat(*F_, v, x.A);
  return vec_mat(*F_, vec_frob(*F_, v, x.frob), x.A);
}

uint64_t EltOps::order(const GroupElt& x, uint64_t limit) const {
  GroupElt y = x;
  for (uint64_t k = 1; k <= limit; ++k) {
    if (is_identity(y)) return k;
    y = mul(y, x);
  }
  throw std::runtime_error("element order exceeds search limit");
}

}  // namespace plusfact
