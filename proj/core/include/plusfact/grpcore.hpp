#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "plusfact/elt.hpp"

namespace plusfact {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when orbit or chain storage would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ActionKind {
  Vector,      ///< v -> v^g
  Projective,  ///< <v> -> <v^g>
  VecSet,      ///< unordered set of vectors
  QFormPoint,  ///< quadratic form Q' -> Q'^g, Q'^g(v) = Q'(v g^-1); linear elements only
};

/// What a point stands for before encoding.
struct PointSpec {
  ActionKind kind = ActionKind::Vector;
  std::vector<Vec> vecs;  ///< one vector, or the set for VecSet
  Mat form;               ///< upper-triangular coefficients for QFormPoint

  static PointSpec vector(Vec v) { return {ActionKind::Vector, {std::move(v)}, {}}; }
  static PointSpec projective(Vec v) { return {ActionKind::Projective, {std::move(v)}, {}}; }
  static PointSpec vecset(std::vector<Vec> vs) { return {ActionKind::VecSet, std::move(vs), {}}; }
  static PointSpec qform(Mat upper) { return {ActionKind::QFormPoint, {}, std::move(upper)}; }
};

/// Encoded point: up to four 64-bit words.
struct Key {
  std::array<uint64_t, 4> w{};
  uint8_t len = 0;
  bool operator==(const Key& o) const { return len == o.len && w == o.w; }
};

struct KeyHash {
  size_t operator()(const Key& k) const noexcept {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ k.len;
    for (int i = 0; i < k.len; ++i) {
      h ^= k.w[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<size_t>(h ^ (h >> 33));
  }
};

/// Encoding and action of group elements on one kind of point.
class PointAction {
 public:
  PointAction(FieldPtr F, int n, ActionKind kind, int set_size = 1);
  ActionKind kind() const { return kind_; }
  int set_size() const { return k_; }
  Key encode(const PointSpec& p) const;
  /// ginv is needed only for QFormPoint; it is computed when null.
  Key apply(const Key& pt, const GroupElt& g, const GroupElt* ginv = nullptr) const;
  /// Dense index size when the domain is small enough, else 0.
  uint64_t dense_domain() const;
  Vec decode_vec(uint64_t code) const;
  uint64_t encode_vec(const Vec& v) const;

 private:
  Key encode_form(const Mat& upper) const;
  Mat decode_form(const Key& k) const;

  FieldPtr F_;
  int n_;
  ActionKind kind_;
  int k_;
  EltOps ops_;
  int form_bits_ = 0;
  int form_per_word_ = 0;
};

/// Explicit orbit under a generator set.
class Orbit {
 public:
  size_t size() const { return pts_.size(); }
  bool contains(const Key& k) const { return index_.count(k) != 0; }
  const std::vector<Key>& points() const { return pts_; }

 private:
  friend class GroupHandle;
  std::vector<Key> pts_;
  std::unordered_map<Key, uint32_t, KeyHash> index_;
};

struct ChainLevel {
  std::shared_ptr<PointAction> act;
  Key base;
  std::vector<Key> orbit;
  std::vector<GroupElt> u, uinv;  ///< base^u[i] == orbit[i]
  std::vector<int32_t> dense;
  std::unordered_map<Key, int32_t, KeyHash> sparse;

  int32_t find(const Key& k) const;
};

/// Stabilizer chain with explicit transversals.
struct Chain {
  std::vector<GroupElt> sgens, sgens_inv;
  std::vector<int> depth;  ///< sgens[i] fixes the base points of levels < depth[i]
  std::vector<ChainLevel> levels;
  size_t bytes = 0;

  BigInt order() const;
  /// Product of orbit lengths over levels < k: the index of the pointwise stabilizer of the first k base points.
  BigInt prefix_index(int k) const;
  /// Strong generators fixing the first k base points.
  std::vector<GroupElt> stabilizer_gens(int k) const;
};

struct ChainOptions {
  uint64_t seed = 1;
  int streak = 40;            ///< consecutive trivial random sifts before stopping
  bool verify = true;         ///< deterministic Schreier-generator pass when the bound is not met
};

/// A group of semilinear maps given by generators, with a lazily built chain.
class GroupHandle {
 public:
  enum class Mode { Vector, Projective };

  GroupHandle(FieldPtr F, int n, std::vector<GroupElt> gens, Mode mode = Mode::Vector);

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  int dim() const { return n_; }
  Mode mode() const { return mode_; }
  const std::vector<GroupElt>& generators() const { return gens_; }
  const EltOps& ops() const { return ops_; }

  /// Caller asserts |G| <= b (for instance all generators lie in a group of order b).
  /// The chain then stops as soon as it certifies b.
  void set_order_bound(BigInt b);
  /// Exact order, known from elsewhere; used as the stopping rule.
  void set_known_order(BigInt b) { set_order_bound(std::move(b)); }
  const std::optional<BigInt>& order_bound() const { return bound_; }

  static void set_default_budget(size_t bytes);
  static size_t default_budget();
  void set_budget(size_t bytes) { budget_ = bytes; }
  void set_seed(uint64_t s) { opts_.seed = s; }
  uint64_t seed() const { return opts_.seed; }

  BigInt order();
  const Chain& chain();
  bool is_member(const GroupElt& x);
  bool is_identity(const GroupElt& x) const;

  /// BFS closure of a point under the generators.
  Orbit orbit(const PointSpec& p) const;
  Orbit orbit(const Vec& v) const { return orbit(point_of(v)); }
  PointSpec point_of(const Vec& v) const;

  /// Stabilizer of a point; |G| = |stab| * |orbit| holds by construction.
  GroupHandle stabilizer(const PointSpec& p);
  GroupHandle stabilizer(const Vec& v) { return stabilizer(point_of(v)); }
  /// Pointwise stabilizer of a sequence of points.
  GroupHandle stabilizer(const std::vector<PointSpec>& pts);

  /// Chain whose base begins with the given points; reuses the known order.
  Chain chain_with_prefix(const std::vector<PointSpec>& prefix);

  GroupElt random_element(uint64_t seed) const;
  GroupHandle conjugate(const GroupElt& g) const;

  /// Builds the chain now and makes the handle read-only.
  void freeze();
  bool frozen() const { return frozen_; }

 private:
  Chain build_chain(const std::vector<PointSpec>& prefix, const std::optional<BigInt>& bound) const;
  std::shared_ptr<PointAction> action_for(ActionKind kind, int set_size) const;

  FieldPtr F_;
  int n_;
  std::vector<GroupElt> gens_;
  Mode mode_;
  EltOps ops_;
  std::optional<BigInt> bound_;
  std::optional<Chain> chain_;
  size_t budget_;
  ChainOptions opts_;
  bool frozen_ = false;
};

/// x in HK, where K is the full stabilizer of omega in the ambient group: omega^{x^-1} in omega^H.
bool product_contains(GroupHandle& ambient, const GroupHandle& h, const PointSpec& omega, GroupHandle& k,
                      const GroupElt& x);

/// Normal closure of the commutators of the generators.
GroupHandle derived_subgroup(GroupHandle& g);

std::string to_string(const BigInt& x);

}  // namespace plusfact
