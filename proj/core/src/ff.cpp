#include "plusfact/ff.hpp"

#include <algorithm>
#include <sstream>

namespace plusfact {

namespace {

using Poly = std::vector<uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, uint64_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    uint64_t c = a.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - (c * m[i]) % p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(r), m, p);
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    uint64_t lc = inv_mod(b.back(), p);
    Poly bm = b;
    for (auto& c : bm) c = c * lc % p;
    a = poly_mod(a, bm, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<uint32_t> digits(uint64_t v, uint32_t p, uint32_t n) {
  std::vector<uint32_t> d(n);
  for (uint32_t i = 0; i < n; ++i) {
    d[i] = static_cast<uint32_t>(v % p);
    v /= p;
  }
  return d;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> r;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      r.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) r.push_back(n);
  return r;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool poly_irreducible(const std::vector<uint32_t>& poly, uint32_t p) {
  Poly g(poly.begin(), poly.end());
  trim(g);
  if (g.size() < 2) return false;
  const size_t d = g.size() - 1;
  if (d == 1) return true;
  // gcd(x^{p^i} - x, g) = 1 for all i <= d/2
  Poly xp = {0, 1};
  for (size_t i = 1; i <= d / 2; ++i) {
    // raise to the p-th power
    Poly r = {1}, b = xp;
    uint64_t e = p;
    while (e) {
      if (e & 1) r = poly_mulmod(r, b, g, p);
      b = poly_mulmod(b, b, g, p);
      e >>= 1;
    }
    xp = r;
    Poly t = xp;
    if (t.size() < 2) t.resize(2, 0);
    t[1] = (t[1] + p - 1) % p;
    Poly h = poly_gcd(g, t, p);
    if (h.size() > 1) return false;
  }
  return true;
}

FieldPtr Field::make(uint32_t p, uint32_t f) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (f < 1 || f > 20) throw FieldError("degree out of range");
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxOrder) throw FieldError("field order exceeds 2^20");
  }
  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->f_ = f;
  F->q_ = static_cast<uint32_t>(q);

  if (f == 1) {
    F->modulus_ = {0, 1};
  } else {
    for (uint64_t code = 0; code < q; ++code) {
      auto low = digits(code, p, f);
      std::vector<uint32_t> cand(low);
      cand.push_back(1);
      if (cand[0] == 0) continue;
      if (poly_irreducible(cand, p)) {
        F->modulus_ = cand;
        break;
      }
    }
    if (F->modulus_.empty()) throw FieldError("no irreducible modulus found");
  }

  if (p != 2 && q <= 256) {
    F->addtab_.resize(q * q);
    for (uint32_t a = 0; a < q; ++a)
      for (uint32_t b = 0; b < q; ++b) F->addtab_[a * q + b] = F->add_digits(a, b);
  }
  if (p != 2 && q <= kTableLimit) {
    F->negtab_.resize(q);
    for (uint32_t a = 0; a < q; ++a) {
      auto d = digits(a, p, f);
      uint32_t v = 0, pw = 1;
      for (uint32_t i = 0; i < f; ++i) {
        v += ((p - d[i]) % p) * pw;
        pw *= p;
      }
      F->negtab_[a] = v;
    }
  }

  // least primitive element
  const uint64_t n = q - 1;
  auto factors = prime_factors(n);
  for (Elt g = 1; g < q; ++g) {
    bool ok = true;
    for (auto r : factors) {
      // F is still being built; pow falls back to polynomial arithmetic
      Elt v = 1, b = g;
      uint64_t e = n / r;
      while (e) {
        if (e & 1) v = F->mul_poly(v, b);
        b = F->mul_poly(b, b);
        e >>= 1;
      }
      if (v == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      F->gen_ = g;
      break;
    }
  }
  if (q <= kTableLimit) {
    F->exp_.resize(2 * n);
    F->log_.assign(q, 0);
    Elt x = 1;
    for (uint64_t k = 0; k < n; ++k) {
      F->exp_[k] = x;
      F->exp_[k + n] = x;
      F->log_[x] = static_cast<uint32_t>(k);
      x = F->mul_poly(x, F->gen_);
    }
    if (x != 1) throw FieldError("internal: generator order mismatch");
    F->tables_ = true;
  }
  return F;
}

Elt Field::add_digits(Elt a, Elt b) const {
  Elt r = 0, pw = 1;
  for (uint32_t i = 0; i < f_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pw;
    a /= p_;
    b /= p_;
    pw *= p_;
  }
  return r;
}

Elt Field::neg(Elt a) const {
  if (p_ == 2) return a;
  if (!negtab_.empty()) return negtab_[a];
  Elt r = 0, pw = 1;
  for (uint32_t i = 0; i < f_; ++i) {
    r += ((p_ - a % p_) % p_) * pw;
    a /= p_;
    pw *= p_;
  }
  return r;
}

Elt Field::mul_poly(Elt a, Elt b) const {
  if (p_ == 2) {
    uint64_t r = 0;
    for (uint32_t i = 0; i < f_; ++i)
      if ((b >> i) & 1) r ^= static_cast<uint64_t>(a) << i;
    uint64_t mod = 0;
    for (uint32_t i = 0; i <= f_; ++i)
      if (modulus_[i]) mod |= 1ull << i;
    for (int i = 2 * static_cast<int>(f_) - 2; i >= static_cast<int>(f_); --i)
      if ((r >> i) & 1) r ^= mod << (i - f_);
    return static_cast<Elt>(r);
  }
  Poly pa(f_), pb(f_);
  Elt x = a, y = b;
  for (uint32_t i = 0; i < f_; ++i) {
    pa[i] = x % p_;
    pb[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  Poly m(modulus_.begin(), modulus_.end());
  Poly r = poly_mulmod(pa, pb, m, p_);
  Elt v = 0, pw = 1;
  for (size_t i = 0; i < r.size(); ++i) {
    v += static_cast<Elt>(r[i]) * pw;
    pw *= p_;
  }
  return v;
}

Elt Field::pow(Elt a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) return exp_[(static_cast<uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  Elt r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw FieldError("inverse of zero");
  if (tables_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elt Field::frob(Elt a, int j) const {
  int jj = ((j % static_cast<int>(f_)) + static_cast<int>(f_)) % static_cast<int>(f_);
  if (jj == 0 || a == 0) return a;
  uint64_t e = 1;
  for (int i = 0; i < jj; ++i) e *= p_;
  return pow(a, e);
}

Elt Field::from_int(int64_t v) const {
  int64_t r = v % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elt>(r);
}

uint32_t Field::log(Elt a) const {
  if (a == 0) throw FieldError("log of zero");
  if (tables_) return log_[a];
  Elt x = 1;
  for (uint32_t k = 0; k < q_ - 1; ++k) {
    if (x == a) return k;
    x = mul(x, gen_);
  }
  throw FieldError("internal: discrete log failed");
}

Elt Field::exp(uint64_t k) const {
  if (tables_) return exp_[k % (q_ - 1)];
  return pow(gen_, k);
}

bool Field::is_square(Elt a) const {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

Elt Field::sqrt(Elt a) const {
  if (a == 0) return 0;
  if (p_ == 2) return pow(a, q_ / 2);
  if (!is_square(a)) throw FieldError("square root of a nonsquare");
  uint32_t k = log(a);
  return exp(k / 2);
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

SubfieldEmbedding::SubfieldEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p()) throw FieldError("incompatible characteristic");
  if (big_->f() % small_->f() != 0) throw FieldError("target degree is not a multiple of source degree");
  const auto& mod = small_->modulus();
  const uint32_t p = small_->p();
  // least root of the small modulus inside the big field
  Elt root = 0;
  bool found = false;
  for (Elt r = 0; r < big_->q() && !found; ++r) {
    Elt acc = 0;
    for (size_t i = mod.size(); i-- > 0;) acc = big_->add(big_->mul(acc, r), big_->from_int(mod[i]));
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw FieldError("internal: no root of subfield modulus");
  map_.resize(small_->q());
  back_.assign(big_->q(), -1);
  for (Elt x = 0; x < small_->q(); ++x) {
    Elt v = x, acc = 0, pw = 1;
    for (uint32_t i = 0; i < small_->f(); ++i) {
      acc = big_->add(acc, big_->mul(big_->from_int(v % p), pw));
      v /= p;
      pw = big_->mul(pw, root);
    }
    map_[x] = acc;
    back_[acc] = x;
  }
}

Elt SubfieldEmbedding::restrict(Elt x) const {
  if (x >= back_.size() || back_[x] < 0) throw FieldError("element is not in the subfield");
  return static_cast<Elt>(back_[x]);
}

Elt embed_subfield(const SubfieldEmbedding& emb, Elt x) { return emb(x); }

Elt trace_to_subfield(const SubfieldEmbedding& emb, Elt x) {
  if (emb.degree() != 2) throw FieldError("trace requires a quadratic extension");
  const Field& B = *emb.big();
  Elt t = B.add(x, B.frob(x, static_cast<int>(emb.small()->f())));
  return emb.restrict(t);
}

Elt find_mu(const Field& F) {
  std::vector<char> hit(F.q(), 0);
  for (Elt t = 0; t < F.q(); ++t) hit[F.add(F.mul(t, t), t)] = 1;
  for (Elt mu = 1; mu < F.q(); ++mu)
    if (!hit[F.neg(mu)]) return mu;
  throw FieldError("internal invariant violated: no irreducible x^2+x+mu");
}

Elt find_lambda(const SubfieldEmbedding& emb) {
  for (Elt x = 0; x < emb.big()->q(); ++x)
    if (trace_to_subfield(emb, x) == 1) return x;
  throw FieldError("internal invariant violated: trace is not surjective");
}

}  // namespace plusfact
