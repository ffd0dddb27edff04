#include "plusfact/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "plusfact/ingest.hpp"
#include "plusfact/octonions.hpp"
#include "plusfact/orders.hpp"
#include "plusfact/quadspace.hpp"

namespace plusfact {

using json = nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::Transitivity: return "transitivity";
    case Method::Order: return "order";
    case Method::ProductCoverage: return "product_coverage";
    case Method::QForm: return "qform";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::Refuted: return "refuted";
    case Verdict::Skipped: return "skipped";
    case Verdict::Error: return "error";
  }
  return "?";
}

bool VerificationReport::unexpected() const {
  if (verdict == Verdict::Error || expectation_mismatch) return true;
  if (verdict == Verdict::Confirmed) return !expect_confirmed;
  if (verdict == Verdict::Refuted) return expect_confirmed;
  return false;
}

namespace {

/// Claim-level skip: reported as skipped, never as refuted.
struct SkipClaim : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ambient {
  QuadSpace V;
  GroupHandle Z;
};

Ambient make_ambient(const AmbientSpec& a, uint64_t seed) {
  QuadSpace V(Field::make(a.p, a.f), a.m);
  GroupHandle Om = build_omega(V);
  if (a.extras.empty()) {
    Om.set_seed(seed);
    return {V, Om};
  }
  std::vector<GroupElt> g = Om.generators();
  BigInt order = *Om.order_bound();
  for (auto& e : a.extras) {
    GroupElt x;
    if (e == "gamma") {
      x = build_gamma(V);
    } else if (e == "phi") {
      x = build_phi(V);
    } else {
      throw std::invalid_argument("unknown ambient extra '" + e + "'");
    }
    // gamma and phi commute and square into Omega, so each one outside Omega doubles the index
    if (x.frob != 0 || !V.dickson_invariant(x).in_omega()) order *= 2;
    g.push_back(x);
  }
  GroupHandle Z(V.field_ptr(), V.dim(), g);
  Z.set_known_order(order);
  Z.set_seed(seed);
  return {V, Z};
}

std::string resolve_path(const std::string& p, const std::string& base) {
  namespace fs = std::filesystem;
  fs::path path(p);
  if (path.is_relative() && !base.empty()) path = fs::path(base) / path;
  return path.string();
}

GroupHandle make_family(const QuadSpace& V, FamilySpec spec, const SuiteOptions& opts) {
  if (spec.family == "R") return build_R(V);
  if (spec.family == "T") return build_T(V);
  if (spec.family == "Omega") return build_omega(V);
  if (spec.family == "trivial") return GroupHandle(V.field_ptr(), V.dim(), {V.ops().identity()});
  if (spec.family == "ingested") {
    spec.path = resolve_path(spec.path, opts.base_dir);
    if (!std::filesystem::exists(spec.path)) throw SkipClaim("generator file not present: " + spec.path);
  }
  return build_family(V, spec, opts.seed);
}

/// A stabilizer object in coordinates, as points for GroupHandle.
struct Object {
  std::vector<PointSpec> pts;  ///< pointwise tuple; size 1 for a single point or a set
};

Object make_object(const QuadSpace& V, const GroupHandle& G, const ObjectSpec& o) {
  if (o.points.empty()) throw std::invalid_argument("stabilizer object without points");
  std::vector<Vec> vs;
  for (auto& s : o.points) vs.push_back(V.parse(s));
  Object ob;
  if (o.setwise && vs.size() > 1) {
    ob.pts.push_back(PointSpec::vecset(vs));
  } else {
    for (auto& v : vs) ob.pts.push_back(G.point_of(v));
  }
  return ob;
}

GroupHandle stabilizer_of(GroupHandle& G, const Object& ob) {
  if (ob.pts.size() == 1) return G.stabilizer(ob.pts[0]);
  return G.stabilizer(ob.pts);
}

/// Length of the orbit of the object: a plain orbit for one point, else |G| / |G_object|.
BigInt object_index(GroupHandle& G, const Object& ob) {
  if (ob.pts.size() == 1) return BigInt(G.orbit(ob.pts[0]).size());
  return G.order() / stabilizer_of(G, ob).order();
}

/// Calls fn on every element of G, u_{L-1}[i_{L-1}] ... u_0[i_0] each once; stops when fn returns false.
template <class Fn>
bool for_each_element(GroupHandle& G, Fn&& fn) {
  const Chain& ch = G.chain();
  const EltOps& ops = G.ops();
  const size_t L = ch.levels.size();
  std::vector<size_t> idx(L, 0);
  while (true) {
    GroupElt g = ops.identity();
    for (size_t l = L; l-- > 0;) g = ops.mul(g, ch.levels[l].u[idx[l]]);
    if (!fn(g)) return false;
    size_t l = 0;
    while (l < L && ++idx[l] == ch.levels[l].u.size()) idx[l++] = 0;
    if (l == L) return true;
  }
}

constexpr uint64_t kEnumerationLimit = uint64_t{1} << 22;

/// |A cap B| by running through the smaller group.
BigInt enumerate_intersection(GroupHandle& A, GroupHandle& B) {
  GroupHandle* small = A.order() <= B.order() ? &A : &B;
  GroupHandle* big = small == &A ? &B : &A;
  if (small->order() > kEnumerationLimit)
    throw BudgetExceeded("both factors exceed " + std::to_string(kEnumerationLimit) + " elements");
  uint64_t count = 0;
  for_each_element(*small, [&](const GroupElt& g) {
    count += big->is_member(g);
    return true;
  });
  return BigInt(count);
}

void require_inside(GroupHandle& Z, const GroupHandle& H, const char* what) {
  for (auto& g : H.generators())
    if (!Z.is_member(g)) throw std::logic_error(std::string(what) + " is not contained in the ambient group");
}

void match_intersection(const ClaimRecord& c, VerificationReport& r) {
  if (!r.order_xy || c.expected_intersection.empty()) return;
  for (auto& e : c.expected_intersection)
    if (e == *r.order_xy) {
      r.matched_intersection = e;
      return;
    }
  r.expectation_mismatch = true;
  std::string want;
  for (auto& e : c.expected_intersection) want += (want.empty() ? "" : " or ") + to_string(e);
  r.note += "|X cap Y| = " + to_string(*r.order_xy) + ", expected " + want + "; ";
}

void run_classical(const ClaimRecord& c, const SuiteOptions& opts, VerificationReport& r) {
  Ambient amb = make_ambient(c.ambient, opts.seed);
  QuadSpace& V = amb.V;
  GroupHandle& Z = amb.Z;

  // one side is realized as a stabilizer in Z; the other is constructed
  const bool y_obj = c.y.object.has_value();
  const SideSpec& objside = y_obj ? c.y : c.x;
  const SideSpec& famside = y_obj ? c.x : c.y;
  if (!objside.object) {
    // two constructed factors: intersection by enumeration
    if (c.method != Method::Order) throw std::invalid_argument("two constructed factors need the order method");
    if (!c.x.family || !c.y.family) throw std::invalid_argument("claim side has neither family nor stabilizer");
    GroupHandle X = make_family(V, *c.x.family, opts), Y = make_family(V, *c.y.family, opts);
    if (opts.conjugate_seed) X = X.conjugate(Z.random_element(opts.conjugate_seed));
    X.set_seed(opts.seed);
    Y.set_seed(opts.seed);
    require_inside(Z, X, "X");
    require_inside(Z, Y, "Y");
    BigInt z = Z.order(), x = X.order(), y = Y.order();
    r.order_x = x;
    r.order_y = y;
    r.order_z = z;
    r.order_xy = enumerate_intersection(X, Y);
    r.verdict = x * y == z * *r.order_xy ? Verdict::Confirmed : Verdict::Refuted;
    return;
  }
  Object ob = make_object(V, Z, *objside.object);

  std::optional<GroupHandle> Fh;
  if (famside.family) {
    Fh = make_family(V, *famside.family, opts);
  } else if (famside.object) {
    Fh = stabilizer_of(Z, make_object(V, Z, *famside.object));
  } else {
    throw std::invalid_argument("claim side has neither family nor stabilizer");
  }
  if (opts.conjugate_seed && c.method != Method::ProductCoverage)
    Fh = Fh->conjugate(Z.random_element(opts.conjugate_seed));
  GroupHandle& F = *Fh;
  F.set_seed(opts.seed);
  require_inside(Z, F, y_obj ? "X" : "Y");

  BigInt z = Z.order();
  r.order_z = z;
  auto assign = [&](const BigInt& fam, const BigInt& obj) {
    (y_obj ? r.order_x : r.order_y) = fam;
    (y_obj ? r.order_y : r.order_x) = obj;
  };

  if (c.method == Method::Transitivity) {
    BigInt oz = object_index(Z, ob), of = object_index(F, ob);
    r.orbit_z = oz;
    r.orbit_x = of;
    BigInt fo = F.order();
    assign(fo, z / oz);
    r.order_xy = fo / of;
    r.verdict = of == oz ? Verdict::Confirmed : Verdict::Refuted;
  } else if (c.method == Method::Order) {
    GroupHandle S = stabilizer_of(Z, ob);
    GroupHandle FS = stabilizer_of(F, ob);
    BigInt fo = F.order(), so = S.order(), io = FS.order();
    assign(fo, so);
    r.order_xy = io;
    r.verdict = fo * so == z * io ? Verdict::Confirmed : Verdict::Refuted;
  } else if (c.method == Method::ProductCoverage) {
    if (!y_obj || ob.pts.size() != 1) throw std::invalid_argument("product_coverage needs Y = Stab_Z(point)");
    if (!c.n || !c.n->family) throw std::invalid_argument("product_coverage needs the group n");
    GroupHandle N = make_family(V, *c.n->family, opts);
    N.set_seed(opts.seed);
    require_inside(Z, N, "n");
    GroupHandle K = stabilizer_of(Z, ob);
    BigInt fo = F.order();
    assign(fo, K.order());
    r.order_xy = fo / BigInt(F.orbit(ob.pts[0]).size());
    bool ok = check_product_coverage(Z, F, ob.pts[0], K, N);
    r.note += "|n| = " + to_string(N.order()) + "; ";
    r.verdict = ok ? Verdict::Confirmed : Verdict::Refuted;
  } else {
    throw std::invalid_argument("method qform needs ambient kind sp6");
  }
  if (c.expected_index && r.order_y && z / *r.order_y != *c.expected_index) {
    r.expectation_mismatch = true;
    r.note += "index |Z|/|Y| = " + to_string(z / *r.order_y) + " differs from the expected value; ";
  }
}

/// Order of the kernel of the Dickson invariant of form on the group generated by H.
BigInt dickson_kernel_order(GroupHandle& H, const QForm& form, uint64_t seed) {
  BigInt o = H.order();
  for (auto& g : H.generators())
    if (reflection_decomposition(form, g, seed).parity) return o / 2;
  return o;
}

void run_qform(const ClaimRecord& c, const SuiteOptions& opts, VerificationReport& r) {
  const auto& a = c.ambient;
  FieldPtr F = Field::make(a.p, a.f);
  if (F->p() != 2) throw std::invalid_argument("qform method is implemented for q even");
  if (c.x.qform != "+" && c.x.qform != "-") throw std::invalid_argument("qform claim needs x.qform = + or -");

  std::vector<GroupElt> zg;
  for (auto& M : gens::sp(*F, 6)) zg.push_back({M, 0});
  GroupHandle Z(F, 6, zg);
  Z.set_known_order(orders::sp(6, F->q()));
  Z.set_seed(opts.seed);

  auto G = build_G2(F, opts.seed);
  GroupHandle Y = g2_handle(F, G);
  Y.set_seed(opts.seed);
  if (c.y.derived) {
    Y = derived_subgroup(Y);
    Y.set_seed(opts.seed);
  }
  require_inside(Z, Y, "Y");

  QForm Qe = symplectic_quadratic(F, c.x.qform == "+" ? 1 : -1);
  for (auto& g : Z.generators())
    if (g.A.n != 6) throw std::logic_error("bad ambient");
  std::vector<PointSpec> pts{PointSpec::qform(Qe.upper())};
  if (c.x.fix_vector) {
    Vec v(6, 0);
    v[4] = v[5] = 1;
    if (Qe.Q(v) == 0) throw std::logic_error("fixed vector is singular");
    pts.push_back(PointSpec::vector(v));
  }
  // O(Q) (or its vector stabilizer) in Z and in Y; X is the Dickson kernel of the former
  GroupHandle SZ = Z.stabilizer(pts);
  GroupHandle SY = Y.stabilizer(pts);
  BigInt x = dickson_kernel_order(SZ, Qe, opts.seed);
  BigInt xy = dickson_kernel_order(SY, Qe, opts.seed);
  BigInt y = Y.order(), z = Z.order();
  r.order_x = x;
  r.order_y = y;
  r.order_z = z;
  r.order_xy = xy;
  r.verdict = x * y == z * xy ? Verdict::Confirmed : Verdict::Refuted;
}

}  // namespace

BigInt intersection_order(GroupHandle& x, const PointSpec& omega, GroupHandle& y, GroupHandle& z) {
  PointAction act(z.field_ptr(), z.dim(), omega.kind,
                  omega.kind == ActionKind::VecSet ? static_cast<int>(omega.vecs.size()) : 1);
  Key w = act.encode(omega);
  for (auto& g : y.generators())
    if (!(act.apply(w, g) == w)) throw std::invalid_argument("y does not fix the point");
  if (y.order() * BigInt(z.orbit(omega).size()) != z.order())
    throw std::invalid_argument("y is not the full stabilizer of the point in z");
  return x.order() / BigInt(x.orbit(omega).size());
}

bool check_product_coverage(GroupHandle& z, const GroupHandle& h, const PointSpec& omega, GroupHandle& k,
                            GroupHandle& n, uint64_t max_elements) {
  BigInt no = n.order();
  if (no > max_elements) throw BudgetExceeded("n has " + to_string(no) + " elements, above the enumeration bound");
  if (z.order() != k.order() * BigInt(z.orbit(omega).size()))
    throw std::invalid_argument("K is not the full stabilizer of the point in the ambient group");
  // x in HK iff omega^{x^-1} in omega^H
  PointAction act(h.field_ptr(), h.dim(), omega.kind,
                  omega.kind == ActionKind::VecSet ? static_cast<int>(omega.vecs.size()) : 1);
  Key w = act.encode(omega);
  Orbit oh = h.orbit(omega);
  return for_each_element(n, [&](const GroupElt& g) { return oh.contains(act.apply(w, n.ops().inv(g))); });
}

VerificationReport check_factorization(const ClaimRecord& c, const SuiteOptions& opts) {
  VerificationReport r;
  r.id = c.id;
  r.source = c.source;
  r.method = c.method;
  r.expect_confirmed = c.expect_confirmed;
  r.seed = opts.seed;
  auto t0 = std::chrono::steady_clock::now();
  if (!c.skip.empty()) {
    r.verdict = Verdict::Skipped;
    r.note = c.skip;
    return r;
  }
  if (c.needs_gb > opts.budget_gb) {
    r.verdict = Verdict::Skipped;
    std::ostringstream s;
    s << "budget: needs about " << c.needs_gb << " GiB";
    r.note = s.str();
    return r;
  }
  try {
    if (c.ambient.kind == "sp6") {
      if (c.method != Method::QForm) throw std::invalid_argument("ambient sp6 needs method qform");
      run_qform(c, opts, r);
    } else if (c.ambient.kind == "omega_plus") {
      run_classical(c, opts, r);
    } else {
      throw std::invalid_argument("unknown ambient kind '" + c.ambient.kind + "'");
    }
    match_intersection(c, r);
  } catch (const SkipClaim& e) {
    r.verdict = Verdict::Skipped;
    r.note += e.what();
  } catch (const BudgetExceeded& e) {
    r.verdict = Verdict::Skipped;
    r.note += std::string("budget: ") + e.what();
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.note += e.what();
  }
  if (!r.note.empty() && r.note.size() >= 2 && r.note.compare(r.note.size() - 2, 2, "; ") == 0)
    r.note.resize(r.note.size() - 2);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool glob_match(const std::string& p, const std::string& s) {
  size_t i = 0, j = 0, star = std::string::npos, mark = 0;
  while (j < s.size()) {
    if (i < p.size() && (p[i] == '?' || p[i] == s[j])) {
      ++i;
      ++j;
    } else if (i < p.size() && p[i] == '*') {
      star = i++;
      mark = j;
    } else if (star != std::string::npos) {
      i = star + 1;
      j = ++mark;
    } else {
      return false;
    }
  }
  while (i < p.size() && p[i] == '*') ++i;
  return i == p.size();
}

std::vector<VerificationReport> run_claim_suite(const std::vector<ClaimRecord>& catalog, const SuiteOptions& opts,
                                                SuiteSummary* summary) {
  std::vector<const ClaimRecord*> todo;
  for (auto& c : catalog)
    if (opts.filter.empty() || glob_match(opts.filter, c.id)) todo.push_back(&c);
  std::sort(todo.begin(), todo.end(), [](auto* a, auto* b) { return a->id < b->id; });

  GroupHandle::set_default_budget(static_cast<size_t>(opts.budget_gb * double(size_t{1} << 30)));
  std::vector<VerificationReport> out(todo.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < todo.size();) out[i] = check_factorization(*todo[i], opts);
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (summary) {
    *summary = {};
    for (auto& r : out) {
      switch (r.verdict) {
        case Verdict::Confirmed: ++summary->confirmed; break;
        case Verdict::Refuted:
          ++summary->refuted;
          if (!r.expect_confirmed) ++summary->refuted_expected;
          break;
        case Verdict::Skipped: ++summary->skipped; break;
        case Verdict::Error: ++summary->errors; break;
      }
      if (r.unexpected()) ++summary->unexpected;
    }
  }
  return out;
}

// ---- catalog ----

namespace {

BigInt big_of(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("not an integer: " + s);
    return BigInt(s);
  }
  if (j.is_number_unsigned()) return BigInt(j.get<uint64_t>());
  if (j.is_number_integer() && j.get<int64_t>() >= 0) return BigInt(j.get<int64_t>());
  throw std::invalid_argument("expected a nonnegative integer");
}

SideSpec side_of(const json& j) {
  SideSpec s;
  s.doc = j.value("doc", "");
  if (j.contains("family")) {
    FamilySpec f;
    f.family = j.at("family").get<std::string>();
    f.S = j.value("S", f.S);
    f.a = j.value("a", f.a);
    f.b = j.value("b", f.b);
    f.extra = j.value("extra", f.extra);
    f.container = j.value("container", f.container);
    f.group_dim = j.value("group_dim", f.group_dim);
    f.sub = j.value("sub", f.sub);
    f.path = j.value("path", f.path);
    s.family = f;
  }
  if (j.contains("stabilizer")) {
    ObjectSpec o;
    o.points = j.at("stabilizer").get<std::vector<std::string>>();
    o.setwise = j.value("setwise", false);
    s.object = o;
  }
  s.qform = j.value("qform", "");
  s.fix_vector = j.value("fix_vector", false);
  s.derived = j.value("derived", false);
  return s;
}

Method method_of(const std::string& s) {
  if (s == "transitivity") return Method::Transitivity;
  if (s == "order") return Method::Order;
  if (s == "product_coverage") return Method::ProductCoverage;
  if (s == "qform") return Method::QForm;
  throw std::invalid_argument("unknown method '" + s + "'");
}

ClaimRecord claim_of(const json& j) {
  ClaimRecord c;
  c.id = j.at("id").get<std::string>();
  c.source = j.value("source", "");
  const json& a = j.at("ambient");
  c.ambient.kind = a.value("kind", c.ambient.kind);
  c.ambient.m = a.value("m", c.ambient.m);
  c.ambient.p = a.value("p", c.ambient.p);
  c.ambient.f = a.value("f", c.ambient.f);
  c.ambient.extras = a.value("extras", std::vector<std::string>{});
  c.x = side_of(j.at("x"));
  c.y = side_of(j.at("y"));
  if (j.contains("n")) c.n = side_of(j.at("n"));
  c.method = method_of(j.at("method").get<std::string>());
  if (j.contains("expected_index")) c.expected_index = big_of(j.at("expected_index"));
  if (j.contains("expected_intersection")) {
    const json& e = j.at("expected_intersection");
    if (e.is_array()) {
      for (auto& v : e) c.expected_intersection.push_back(big_of(v));
    } else {
      c.expected_intersection.push_back(big_of(e));
    }
  }
  std::string ex = j.value("expect", "confirmed");
  if (ex != "confirmed" && ex != "refuted") throw std::invalid_argument("expect must be confirmed or refuted");
  c.expect_confirmed = ex == "confirmed";
  c.needs_gb = j.value("needs_gb", 0.0);
  c.skip = j.value("skip", "");
  if (!c.expect_confirmed || !c.expected_intersection.empty() || c.expected_index) return c;
  // an expectation must be present; a bare "confirmed" counts
  if (!j.contains("expect")) throw std::invalid_argument("claim " + c.id + " states no expectation");
  return c;
}

}  // namespace

std::vector<ClaimRecord> parse_catalog(std::istream& in) {
  std::vector<ClaimRecord> out;
  std::string line;
  int ln = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++ln;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::invalid_argument("catalog line " + std::to_string(ln) + ": " + e.what());
    }
    if (!header) {
      if (j.value("schema", "") != "plusfact-claims" || j.value("version", 0) != 1)
        throw std::invalid_argument("catalog header must be {\"schema\":\"plusfact-claims\",\"version\":1}");
      header = true;
      continue;
    }
    try {
      out.push_back(claim_of(j));
    } catch (const std::exception& e) {
      throw std::invalid_argument("catalog line " + std::to_string(ln) + ": " + e.what());
    }
  }
  if (!header) throw std::invalid_argument("empty catalog");
  return out;
}

std::vector<ClaimRecord> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_catalog(in);
}

// ---- reports ----

std::string reports_json(const std::vector<VerificationReport>& rs, const SuiteSummary& s, bool timings) {
  json arr = json::array();
  auto num = [](const std::optional<BigInt>& b) { return b ? json(to_string(*b)) : json(nullptr); };
  for (auto& r : rs) {
    json o;
    o["id"] = r.id;
    o["source"] = r.source;
    o["method"] = to_string(r.method);
    o["verdict"] = to_string(r.verdict);
    o["expected"] = r.expect_confirmed ? "confirmed" : "refuted";
    o["unexpected"] = r.unexpected();
    o["order_x"] = num(r.order_x);
    o["order_y"] = num(r.order_y);
    o["order_z"] = num(r.order_z);
    o["order_x_cap_y"] = num(r.order_xy);
    o["orbit_x"] = num(r.orbit_x);
    o["orbit_z"] = num(r.orbit_z);
    o["matched_intersection"] = num(r.matched_intersection);
    o["note"] = r.note;
    o["seed"] = r.seed;
    if (timings) o["seconds"] = r.seconds;
    arr.push_back(o);
  }
  json top;
  top["schema"] = "plusfact-report";
  top["version"] = 1;
  top["reports"] = arr;
  top["summary"] = {{"confirmed", s.confirmed}, {"refuted", s.refuted},   {"refuted_expected", s.refuted_expected},
                    {"skipped", s.skipped},     {"errors", s.errors},     {"unexpected", s.unexpected}};
  return top.dump(2) + "\n";
}

std::string reports_table(const std::vector<VerificationReport>& rs, const SuiteSummary& s) {
  std::vector<std::vector<std::string>> rows{{"id", "method", "verdict", "|X|", "|Y|", "|Z|", "|X cap Y|", "note"}};
  auto str = [](const std::optional<BigInt>& b) { return b ? to_string(*b) : std::string("-"); };
  for (auto& r : rs) {
    std::string v = to_string(r.verdict);
    if (r.verdict == Verdict::Refuted && !r.expect_confirmed) v += " (expected)";
    if (r.unexpected()) v += " !";
    rows.push_back({r.id, to_string(r.method), v, str(r.order_x), str(r.order_y), str(r.order_z), str(r.order_xy),
                    r.note});
  }
  std::vector<size_t> w(rows[0].size(), 0);
  for (auto& row : rows)
    for (size_t i = 0; i + 1 < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
  std::ostringstream o;
  for (auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i + 1 < row.size())
        o << std::left << std::setw(static_cast<int>(w[i]) + 2) << row[i];
      else
        o << row[i];
    }
    o << '\n';
  }
  o << "confirmed: " << s.confirmed << ", refuted: " << s.refuted << " (expected-negative: " << s.refuted_expected
    << "), skipped: " << s.skipped << ", errors: " << s.errors << ", unexpected: " << s.unexpected << '\n';
  return o.str();
}

}  // namespace plusfact
