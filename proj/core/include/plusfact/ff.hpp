#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace plusfact {

/// A field element is its index: the coefficient vector of the residue
/// polynomial read as a base-p integer.
using Elt = uint32_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^f) for p^f <= 2^20. Immutable once built.
class Field {
 public:
  static constexpr uint32_t kMaxOrder = 1u << 20;
  static constexpr uint32_t kTableLimit = 1u << 16;

  static FieldPtr make(uint32_t p, uint32_t f);

  uint32_t p() const { return p_; }
  uint32_t f() const { return f_; }
  uint32_t q() const { return q_; }
  /// Coefficients c_0..c_f of the monic modulus.
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  /// Least primitive element.
  Elt gen() const { return gen_; }

  Elt add(Elt a, Elt b) const {
    if (p_ == 2) return a ^ b;
    if (!addtab_.empty()) return addtab_[a * q_ + b];
    return add_digits(a, b);
  }
  Elt neg(Elt a) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, uint64_t e) const;
  /// a^(p^j)
  Elt frob(Elt a, int j) const;
  /// Embeds an integer of the prime field.
  Elt from_int(int64_t v) const;

  bool has_tables() const { return tables_; }
  uint32_t log(Elt a) const;
  Elt exp(uint64_t k) const;
  bool is_square(Elt a) const;
  /// Some b with b*b == a; requires is_square(a).
  Elt sqrt(Elt a) const;
  /// True when a lies in the subfield GF(p^d).
  bool in_subfield(Elt a, uint32_t d) const { return frob(a, static_cast<int>(d)) == a; }

  std::string name() const;

 private:
  Field() = default;
  Elt add_digits(Elt a, Elt b) const;
  Elt mul_poly(Elt a, Elt b) const;

  uint32_t p_ = 0, f_ = 0, q_ = 0;
  Elt gen_ = 0;
  bool tables_ = false;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_;  // length 2(q-1)
  std::vector<uint32_t> log_;
  std::vector<uint32_t> addtab_;
  std::vector<uint32_t> negtab_;
};

bool is_prime(uint64_t n);

/// Irreducibility of a monic polynomial over GF(p), coefficients low to high.
bool poly_irreducible(const std::vector<uint32_t>& poly, uint32_t p);

/// Ring embedding GF(q) -> GF(q^b) fixed by sending the generator of the
/// source to the least root of its minimal polynomial in the target.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr small, FieldPtr big);
  Elt operator()(Elt x) const { return map_[x]; }
  /// Inverse on the image; throws if x is outside the subfield.
  Elt restrict(Elt x) const;
  const FieldPtr& small() const { return small_; }
  const FieldPtr& big() const { return big_; }
  uint32_t degree() const { return big_->f() / small_->f(); }

 private:
  FieldPtr small_, big_;
  std::vector<Elt> map_;
  std::vector<int64_t> back_;
};

Elt embed_subfield(const SubfieldEmbedding& emb, Elt x);

/// x + x^q for x in GF(q^2), returned as an element of GF(q).
Elt trace_to_subfield(const SubfieldEmbedding& emb, Elt x);

/// Least nonzero mu with x^2 + x + mu irreducible over the field.
Elt find_mu(const Field& F);

/// Least lambda in GF(q^2) with lambda + lambda^q = 1.
Elt find_lambda(const SubfieldEmbedding& emb);

}  // namespace plusfact
