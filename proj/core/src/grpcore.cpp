#include "plusfact/grpcore.hpp"

#include <algorithm>
#include <random>

namespace plusfact {

namespace {

size_t g_default_budget = size_t{8} << 30;

constexpr uint64_t kDenseLimit = uint64_t{1} << 20;

int bits_for(uint32_t q) {
  int b = 0;
  while ((uint64_t{1} << b) < q) ++b;
  return std::max(b, 1);
}

// Product replacement random elements.
class Replacer {
 public:
  Replacer(const EltOps& ops, const std::vector<GroupElt>& gens, uint64_t seed) : ops_(ops), rng_(seed) {
    for (const auto& g : gens) st_.push_back(g);
    if (st_.empty()) st_.push_back(ops.identity());
    while (st_.size() < 10) st_.push_back(st_[st_.size() % gens.size()]);
    acc_ = ops.identity();
    for (int i = 0; i < 60; ++i) next();
  }
  GroupElt next() {
    std::uniform_int_distribution<size_t> d(0, st_.size() - 1);
    size_t i = d(rng_), j = d(rng_);
    while (j == i) j = d(rng_);
    bool left = rng_() & 1, inv = rng_() & 1;
    const GroupElt y = inv ? ops_.inv(st_[j]) : st_[j];
    st_[i] = left ? ops_.mul(y, st_[i]) : ops_.mul(st_[i], y);
    acc_ = ops_.mul(acc_, st_[i]);
    return acc_;
  }

 private:
  const EltOps& ops_;
  std::mt19937_64 rng_;
  std::vector<GroupElt> st_;
  GroupElt acc_;
};

}  // namespace

std::string to_string(const BigInt& x) { return x.str(); }

PointAction::PointAction(FieldPtr F, int n, ActionKind kind, int set_size)
    : F_(F), n_(n), kind_(kind), k_(set_size), ops_(F, n) {
  const int bits = bits_for(F->q());
  if (kind != ActionKind::QFormPoint && static_cast<int64_t>(bits) * n > 63)
    throw std::invalid_argument("vector codes do not fit in 64 bits");
  if (kind == ActionKind::VecSet && (k_ < 1 || k_ > 4)) throw std::invalid_argument("vector sets hold 1..4 vectors");
  if (kind == ActionKind::QFormPoint) {
    form_bits_ = bits;
    form_per_word_ = 64 / bits;
    int entries = n * (n + 1) / 2;
    if ((entries + form_per_word_ - 1) / form_per_word_ > 4) throw std::invalid_argument("form too large to encode");
  }
}

uint64_t PointAction::encode_vec(const Vec& v) const { return vec_code(v, F_->q()); }

Vec PointAction::decode_vec(uint64_t code) const { return vec_decode(code, n_, F_->q()); }

uint64_t PointAction::dense_domain() const {
  if (kind_ != ActionKind::Vector && kind_ != ActionKind::Projective) return 0;
  uint64_t d = 1;
  for (int i = 0; i < n_; ++i) {
    d *= F_->q();
    if (d > kDenseLimit) return 0;
  }
  return d;
}

Key PointAction::encode_form(const Mat& upper) const {
  Key k;
  int idx = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j, ++idx) {
      int w = idx / form_per_word_, s = (idx % form_per_word_) * form_bits_;
      k.w[w] |= static_cast<uint64_t>(upper(i, j)) << s;
    }
  k.len = static_cast<uint8_t>((idx + form_per_word_ - 1) / form_per_word_);
  return k;
}

Mat PointAction::decode_form(const Key& k) const {
  Mat M(n_);
  const uint64_t mask = (uint64_t{1} << form_bits_) - 1;
  int idx = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j, ++idx) {
      int w = idx / form_per_word_, s = (idx % form_per_word_) * form_bits_;
      M(i, j) = static_cast<Elt>((k.w[w] >> s) & mask);
    }
  return M;
}

namespace {

Vec normalize_projective(const Field& F, Vec v) {
  for (auto x : v)
    if (x) {
      if (x != 1) v = vec_scale(F, F.inv(x), v);
      return v;
    }
  throw std::invalid_argument("zero vector has no projective point");
}

}  // namespace

Key PointAction::encode(const PointSpec& p) const {
  if (p.kind != kind_) throw std::invalid_argument("point kind does not match the action");
  Key k;
  switch (kind_) {
    case ActionKind::Vector:
      if (static_cast<int>(p.vecs.at(0).size()) != n_) throw std::invalid_argument("dimension mismatch");
      k.w[0] = encode_vec(p.vecs[0]);
      k.len = 1;
      break;
    case ActionKind::Projective:
      if (static_cast<int>(p.vecs.at(0).size()) != n_) throw std::invalid_argument("dimension mismatch");
      k.w[0] = encode_vec(normalize_projective(*F_, p.vecs[0]));
      k.len = 1;
      break;
    case ActionKind::VecSet: {
      if (static_cast<int>(p.vecs.size()) != k_) throw std::invalid_argument("vector set size mismatch");
      std::vector<uint64_t> c;
      for (auto& v : p.vecs) c.push_back(encode_vec(v));
      std::sort(c.begin(), c.end());
      for (int i = 0; i < k_; ++i) k.w[i] = c[i];
      k.len = static_cast<uint8_t>(k_);
      break;
    }
    case ActionKind::QFormPoint:
      k = encode_form(p.form);
      break;
  }
  return k;
}

Key PointAction::apply(const Key& pt, const GroupElt& g, const GroupElt* ginv) const {
  const Field& F = *F_;
  switch (kind_) {
    case ActionKind::Vector: {
      Key k;
      k.w[0] = encode_vec(ops_.apply(decode_vec(pt.w[0]), g));
      k.len = 1;
      return k;
    }
    case ActionKind::Projective: {
      Key k;
      k.w[0] = encode_vec(normalize_projective(F, ops_.apply(decode_vec(pt.w[0]), g)));
      k.len = 1;
      return k;
    }
    case ActionKind::VecSet: {
      Key k;
      k.len = pt.len;
      for (int i = 0; i < pt.len; ++i) k.w[i] = encode_vec(ops_.apply(decode_vec(pt.w[i]), g));
      std::sort(k.w.begin(), k.w.begin() + k.len);
      return k;
    }
    case ActionKind::QFormPoint: {
      if (g.frob != 0) throw std::invalid_argument("form action needs linear elements");
      GroupElt tmp;
      if (!ginv) {
        tmp = ops_.inv(g);
        ginv = &tmp;
      }
      // Q'^g(v) = Q'(v g^-1): coefficients of h M h^T folded to upper form
      const Mat& h = ginv->A;
      Mat M = decode_form(pt);
      Mat N = mat_mul(F, mat_mul(F, h, M), mat_transpose(h));
      Mat U(n_);
      for (int i = 0; i < n_; ++i) {
        U(i, i) = N(i, i);
        for (int j = i + 1; j < n_; ++j) U(i, j) = F.add(N(i, j), N(j, i));
      }
      return encode_form(U);
    }
  }
  return pt;
}

int32_t ChainLevel::find(const Key& k) const {
  if (!dense.empty()) return dense[k.w[0]];
  auto it = sparse.find(k);
  return it == sparse.end() ? -1 : it->second;
}

BigInt Chain::order() const {
  BigInt r = 1;
  for (auto& l : levels) r *= l.orbit.size();
  return r;
}

BigInt Chain::prefix_index(int k) const {
  BigInt r = 1;
  for (int i = 0; i < k && i < static_cast<int>(levels.size()); ++i) r *= levels[i].orbit.size();
  return r;
}

std::vector<GroupElt> Chain::stabilizer_gens(int k) const {
  std::vector<GroupElt> out;
  for (size_t i = 0; i < sgens.size(); ++i)
    if (depth[i] >= k) out.push_back(sgens[i]);
  return out;
}

void GroupHandle::set_default_budget(size_t bytes) { g_default_budget = bytes; }
size_t GroupHandle::default_budget() { return g_default_budget; }

GroupHandle::GroupHandle(FieldPtr F, int n, std::vector<GroupElt> gens, Mode mode)
    : F_(F), n_(n), gens_(std::move(gens)), mode_(mode), ops_(F, n), budget_(g_default_budget) {
  for (auto& g : gens_) {
    if (g.dim() != n) throw std::invalid_argument("generator dimension mismatch");
    if (g.frob < 0 || g.frob >= static_cast<int>(F->f())) throw std::invalid_argument("Frobenius exponent out of range");
    if (!mat_inverse(*F, g.A)) throw std::invalid_argument("singular generator");
  }
}

void GroupHandle::set_order_bound(BigInt b) {
  if (frozen_) throw std::logic_error("handle is frozen");
  bound_ = std::move(b);
}

bool GroupHandle::is_identity(const GroupElt& x) const {
  return mode_ == Mode::Projective ? ops_.is_scalar(x) : ops_.is_identity(x);
}

PointSpec GroupHandle::point_of(const Vec& v) const {
  return mode_ == Mode::Projective ? PointSpec::projective(v) : PointSpec::vector(v);
}

std::shared_ptr<PointAction> GroupHandle::action_for(ActionKind kind, int set_size) const {
  return std::make_shared<PointAction>(F_, n_, kind, set_size);
}

namespace {

struct Builder {
  const GroupHandle& G;
  const EltOps& ops;
  Chain& c;
  size_t budget;
  size_t elt_bytes;

  void charge(size_t b) {
    c.bytes += b;
    if (c.bytes > budget)
      throw BudgetExceeded("stabilizer chain exceeds memory budget of " + std::to_string(budget >> 20) + " MiB");
  }

  void add_level(std::shared_ptr<PointAction> act, const Key& base) {
    ChainLevel L;
    L.act = std::move(act);
    L.base = base;
    uint64_t dd = L.act->dense_domain();
    if (dd) {
      charge(dd * sizeof(int32_t));
      L.dense.assign(dd, -1);
    }
    c.levels.push_back(std::move(L));
    insert(c.levels.size() - 1, base, ops.identity(), ops.identity());
  }

  void insert(size_t l, const Key& k, GroupElt u, GroupElt uinv) {
    ChainLevel& L = c.levels[l];
    charge(elt_bytes + 64);
    int32_t idx = static_cast<int32_t>(L.orbit.size());
    L.orbit.push_back(k);
    if (!L.dense.empty())
      L.dense[k.w[0]] = idx;
    else
      L.sparse.emplace(k, idx);
    L.u.push_back(std::move(u));
    L.uinv.push_back(std::move(uinv));
  }

  std::vector<int> level_gens(size_t l) const {
    std::vector<int> out;
    for (size_t i = 0; i < c.sgens.size(); ++i)
      if (c.depth[i] >= static_cast<int>(l)) out.push_back(static_cast<int>(i));
    return out;
  }

  void extend(size_t l, int newgen) {
    ChainLevel& L = c.levels[l];
    auto gens = level_gens(l);
    auto try_add = [&](size_t j, int s) {
      Key img = L.act->apply(L.orbit[j], c.sgens[s], &c.sgens_inv[s]);
      if (L.find(img) >= 0) return;
      GroupElt u = ops.mul(L.u[j], c.sgens[s]);
      GroupElt ui = ops.mul(c.sgens_inv[s], L.uinv[j]);
      insert(l, img, std::move(u), std::move(ui));
    };
    size_t old = L.orbit.size();
    for (size_t j = 0; j < old; ++j) try_add(j, newgen);
    for (size_t j = old; j < L.orbit.size(); ++j)
      for (int s : gens) try_add(j, s);
  }

  // Returns residue and the level where sifting stopped.
  std::pair<GroupElt, size_t> sift(GroupElt g, size_t start) const {
    for (size_t i = start; i < c.levels.size(); ++i) {
      const ChainLevel& L = c.levels[i];
      Key img = L.act->apply(L.base, g);
      int32_t idx = L.find(img);
      if (idx < 0) return {std::move(g), i};
      if (idx != 0) g = ops.mul(g, L.uinv[idx]);
    }
    return {std::move(g), c.levels.size()};
  }

  bool nontrivial(const GroupElt& h, size_t j) const { return j < c.levels.size() || !G.is_identity(h); }

  void new_base_for(const GroupElt& h) {
    const Field& F = G.field();
    const int n = G.dim();
    const bool proj = G.mode() == GroupHandle::Mode::Projective;
    auto act = std::make_shared<PointAction>(G.field_ptr(), n, proj ? ActionKind::Projective : ActionKind::Vector);
    std::vector<Vec> cands;
    for (int i = 0; i < n; ++i) {
      Vec v(n, 0);
      v[i] = 1;
      cands.push_back(v);
    }
    if (proj) {
      for (int i = 1; i < n; ++i) {
        Vec v(n, 0);
        v[0] = 1;
        v[i] = 1;
        cands.push_back(v);
      }
      if (n >= 2 && F.q() > 2) {
        Vec v(n, 0);
        v[0] = F.gen();
        v[1] = 1;
        cands.push_back(v);
      }
    } else if (F.q() > 2) {
      for (int i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = F.gen();
        cands.push_back(v);
      }
    }
    for (auto& v : cands) {
      PointSpec p = proj ? PointSpec::projective(v) : PointSpec::vector(v);
      Key k = act->encode(p);
      if (!(act->apply(k, h) == k)) {
        add_level(act, k);
        return;
      }
    }
    throw std::logic_error("no base point is moved by a nontrivial residue");
  }

  void add_gen(GroupElt h, size_t j) {
    if (j == c.levels.size()) new_base_for(h);
    charge(2 * elt_bytes);
    c.sgens_inv.push_back(ops.inv(h));
    c.sgens.push_back(std::move(h));
    c.depth.push_back(static_cast<int>(j));
    int id = static_cast<int>(c.sgens.size()) - 1;
    for (size_t l = 0; l <= j; ++l) extend(l, id);
  }

  bool sift_and_add(const GroupElt& g, size_t start = 0) {
    auto [h, j] = sift(g, start);
    if (!nontrivial(h, j)) return false;
    add_gen(std::move(h), j);
    return true;
  }

  void verify() {
    long i = static_cast<long>(c.levels.size()) - 1;
    while (i >= 0) {
      bool added = false;
      const size_t li = static_cast<size_t>(i);
      auto gens = level_gens(li);
      for (size_t a = 0; a < c.levels[li].orbit.size() && !added; ++a) {
        for (int s : gens) {
          const ChainLevel& L = c.levels[li];
          Key img = L.act->apply(L.orbit[a], c.sgens[s], &c.sgens_inv[s]);
          int32_t b = L.find(img);
          GroupElt t = ops.mul(ops.mul(L.u[a], c.sgens[s]), L.uinv[b]);
          auto [h, j] = sift(std::move(t), li + 1);
          if (nontrivial(h, j)) {
            add_gen(std::move(h), j);
            i = static_cast<long>(j);
            added = true;
            break;
          }
        }
      }
      if (!added) --i;
    }
  }
};

}  // namespace

Chain GroupHandle::build_chain(const std::vector<PointSpec>& prefix, const std::optional<BigInt>& bound) const {
  Chain c;
  const size_t eb = 2 * static_cast<size_t>(n_) * n_ * sizeof(Elt) + 2 * sizeof(GroupElt);
  Builder B{*this, ops_, c, budget_, eb};
  for (auto& p : prefix) {
    auto act = action_for(p.kind, p.kind == ActionKind::VecSet ? static_cast<int>(p.vecs.size()) : 1);
    B.add_level(act, act->encode(p));
  }
  auto reached = [&]() { return bound && c.order() >= *bound; };
  for (auto& g : gens_) {
    if (reached()) break;
    B.sift_and_add(g);
  }
  if (!gens_.empty()) {
    Replacer R(ops_, gens_, opts_.seed);
    int streak = 0;
    while (streak < opts_.streak && !reached()) {
      if (B.sift_and_add(R.next()))
        streak = 0;
      else
        ++streak;
    }
  }
  if (bound && c.order() > *bound) throw std::logic_error("group order exceeds the asserted bound " + bound->str());
  if (!reached() && opts_.verify) B.verify();
  if (bound && c.order() > *bound) throw std::logic_error("group order exceeds the asserted bound " + bound->str());
  return c;
}

const Chain& GroupHandle::chain() {
  if (!chain_) {
    if (frozen_) throw std::logic_error("frozen handle without chain");
    chain_ = build_chain({}, bound_);
  }
  return *chain_;
}

BigInt GroupHandle::order() { return chain().order(); }

void GroupHandle::freeze() {
  chain();
  frozen_ = true;
}

bool GroupHandle::is_member(const GroupElt& x) {
  if (x.dim() != n_) throw std::invalid_argument("dimension mismatch");
  const Chain& c = chain();
  Chain& cc = const_cast<Chain&>(c);
  Builder B{*this, ops_, cc, budget_, 0};
  auto [h, j] = B.sift(x, 0);
  return !B.nontrivial(h, j);
}

Orbit GroupHandle::orbit(const PointSpec& p) const {
  auto act = action_for(p.kind, p.kind == ActionKind::VecSet ? static_cast<int>(p.vecs.size()) : 1);
  std::vector<GroupElt> inv;
  if (p.kind == ActionKind::QFormPoint)
    for (auto& g : gens_) inv.push_back(ops_.inv(g));
  Orbit o;
  Key start = act->encode(p);
  o.pts_.push_back(start);
  o.index_.emplace(start, 0);
  const size_t per = sizeof(Key) + 48;
  for (size_t i = 0; i < o.pts_.size(); ++i) {
    for (size_t s = 0; s < gens_.size(); ++s) {
      Key img = act->apply(o.pts_[i], gens_[s], inv.empty() ? nullptr : &inv[s]);
      if (o.index_.emplace(img, static_cast<uint32_t>(o.pts_.size())).second) {
        o.pts_.push_back(img);
        if (o.pts_.size() * per > budget_) throw BudgetExceeded("orbit exceeds memory budget");
      }
    }
  }
  return o;
}

Chain GroupHandle::chain_with_prefix(const std::vector<PointSpec>& prefix) {
  BigInt ord = order();
  return build_chain(prefix, ord);
}

GroupHandle GroupHandle::stabilizer(const PointSpec& p) { return stabilizer(std::vector<PointSpec>{p}); }

GroupHandle GroupHandle::stabilizer(const std::vector<PointSpec>& pts) {
  BigInt ord = order();
  Chain c = build_chain(pts, ord);
  if (c.order() != ord) throw std::logic_error("prefix chain order disagrees with the handle order");
  const int k = static_cast<int>(pts.size());
  auto gens = c.stabilizer_gens(k);
  if (gens.empty()) gens.push_back(ops_.identity());
  GroupHandle H(F_, n_, std::move(gens), mode_);
  H.budget_ = budget_;
  H.opts_ = opts_;
  H.bound_ = ord / c.prefix_index(k);
  return H;
}

GroupElt GroupHandle::random_element(uint64_t seed) const {
  if (gens_.empty()) return ops_.identity();
  Replacer R(ops_, gens_, seed);
  return R.next();
}

GroupHandle GroupHandle::conjugate(const GroupElt& g) const {
  std::vector<GroupElt> gens;
  for (auto& s : gens_) gens.push_back(ops_.conj(s, g));
  GroupHandle H(F_, n_, std::move(gens), mode_);
  H.budget_ = budget_;
  H.opts_ = opts_;
  if (chain_)
    H.bound_ = chain_->order();
  else
    H.bound_ = bound_;
  return H;
}

bool product_contains(GroupHandle& ambient, const GroupHandle& h, const PointSpec& omega, GroupHandle& k,
                      const GroupElt& x) {
  Orbit oz = ambient.orbit(omega);
  if (ambient.order() != k.order() * oz.size())
    throw std::invalid_argument("K is not the full stabilizer of the point in the ambient group");
  PointAction act(h.field_ptr(), h.dim(), omega.kind,
                  omega.kind == ActionKind::VecSet ? static_cast<int>(omega.vecs.size()) : 1);
  Key w = act.encode(omega);
  Key img = act.apply(w, h.ops().inv(x));
  return h.orbit(omega).contains(img);
}

GroupHandle derived_subgroup(GroupHandle& g) {
  const EltOps& ops = g.ops();
  std::vector<GroupElt> gens;
  const auto& G = g.generators();
  for (size_t a = 0; a < G.size(); ++a)
    for (size_t b = a + 1; b < G.size(); ++b) {
      GroupElt c = ops.comm(G[a], G[b]);
      if (!g.is_identity(c)) gens.push_back(c);
    }
  if (gens.empty()) gens.push_back(ops.identity());
  GroupHandle D(g.field_ptr(), g.dim(), gens, g.mode());
  D.set_seed(g.seed());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < gens.size() && !changed; ++i)
      for (auto& s : G) {
        GroupElt c = ops.conj(gens[i], s);
        if (!D.is_member(c)) {
          gens.push_back(c);
          D = GroupHandle(g.field_ptr(), g.dim(), gens, g.mode());
          D.set_seed(g.seed());
          changed = true;
          break;
        }
      }
  }
  return D;
}

}  // namespace plusfact
