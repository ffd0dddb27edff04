#include "plusfact/ingest.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "plusfact/quadspace.hpp"

namespace plusfact {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;

void fnv(uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
}

/// Tokens of the file with comments stripped, tagged with line numbers.
struct Tokens {
  std::vector<std::pair<std::string, int>> t;
  size_t i = 0;

  bool done() const { return i >= t.size(); }
  const std::string& peek() const { return t.at(i).first; }
  std::string next(const char* what) {
    if (done()) throw IngestError(std::string("unexpected end of file, expected ") + what);
    return t[i++].first;
  }
  int line() const { return done() ? -1 : t[i].second; }
  uint64_t number(const char* what) {
    std::string s = next(what);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw IngestError("line " + std::to_string(t[i - 1].second) + ": expected a decimal integer for " + what +
                        ", got '" + s + "'");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw IngestError(std::string("integer out of range for ") + what);
    }
  }
};

}  // namespace

GeneratorFile GeneratorFile::parse(std::istream& in) {
  Tokens tk;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
    std::istringstream ls(line);
    std::string w;
    while (ls >> w) tk.t.push_back({w, ln});
  }
  GeneratorFile g;
  if (tk.next("magic") != "plusfact-generators") throw IngestError("missing 'plusfact-generators' header");
  if (tk.number("version") != 1) throw IngestError("unsupported generator file version");
  size_t count = 0;
  std::vector<int> frobs;
  bool have_field = false, have_dim = false, have_count = false;
  uint64_t declared = 0;
  bool have_checksum = false;
  while (!tk.done()) {
    std::string key = tk.next("keyword");
    if (key == "field") {
      g.p = static_cast<uint32_t>(tk.number("p"));
      g.f = static_cast<uint32_t>(tk.number("f"));
      have_field = true;
    } else if (key == "dim") {
      g.n = static_cast<int>(tk.number("dim"));
      have_dim = true;
    } else if (key == "count") {
      count = tk.number("count");
      have_count = true;
    } else if (key == "frob") {
      if (!have_count) throw IngestError("'frob' before 'count'");
      for (size_t i = 0; i < count; ++i) frobs.push_back(static_cast<int>(tk.number("frob")));
    } else if (key == "order") {
      std::string s = tk.next("order");
      if (s.find_first_not_of("0123456789") != std::string::npos) throw IngestError("bad order '" + s + "'");
      g.order = BigInt(s);
    } else if (key == "form") {
      std::string s = tk.next("form");
      if (s != "hyperbolic") throw IngestError("unknown form '" + s + "'");
      g.hyperbolic_form = true;
    } else if (key == "matrix") {
      if (!have_field || !have_dim) throw IngestError("'matrix' before 'field' and 'dim'");
      uint64_t q = 1;
      for (uint32_t i = 0; i < g.f; ++i) q *= g.p;
      Mat M(g.n);
      for (auto& x : M.a) {
        uint64_t v = tk.number("matrix entry");
        if (v >= q) throw IngestError("matrix entry " + std::to_string(v) + " is not below q");
        x = static_cast<Elt>(v);
      }
      g.gens.push_back({M, 0});
    } else if (key == "checksum") {
      declared = tk.number("checksum");
      have_checksum = true;
      if (!tk.done()) throw IngestError("content after checksum");
    } else {
      throw IngestError("unknown keyword '" + key + "'");
    }
  }
  if (!have_field || !have_dim || !have_count) throw IngestError("header incomplete");
  if (g.gens.size() != count) throw IngestError("expected " + std::to_string(count) + " matrices");
  if (!frobs.empty())
    for (size_t i = 0; i < count; ++i) g.gens[i].frob = frobs[i];
  if (!have_checksum) throw IngestError("missing checksum");
  if (declared != g.checksum()) throw IngestError("checksum mismatch");
  return g;
}

GeneratorFile GeneratorFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path);
  return parse(in);
}

uint64_t GeneratorFile::checksum() const {
  uint64_t h = kFnvOffset;
  bool first = true;
  auto tok = [&](uint64_t v) {
    if (!first) fnv(h, " ");
    first = false;
    fnv(h, std::to_string(v));
  };
  for (auto& g : gens)
    for (Elt x : g.A.a) tok(x);
  for (auto& g : gens) tok(static_cast<uint64_t>(g.frob));
  return h;
}

void GeneratorFile::write(std::ostream& out) const {
  out << "plusfact-generators 1\n";
  out << "field " << p << ' ' << f << '\n';
  out << "dim " << n << '\n';
  out << "count " << gens.size() << '\n';
  bool semilinear = false;
  for (auto& g : gens) semilinear |= g.frob != 0;
  if (semilinear) {
    out << "frob";
    for (auto& g : gens) out << ' ' << g.frob;
    out << '\n';
  }
  if (order) out << "order " << to_string(*order) << '\n';
  if (hyperbolic_form) out << "form hyperbolic\n";
  for (auto& g : gens) {
    out << "matrix\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out << (j ? " " : "") << g.A(i, j);
      out << '\n';
    }
  }
  out << "checksum " << checksum() << '\n';
}

GroupHandle ingest(const GeneratorFile& file) {
  FieldPtr F = Field::make(file.p, file.f);
  for (auto& g : file.gens) {
    if (g.A.n != file.n) throw IngestError("matrix dimension mismatch");
    if (g.frob < 0 || g.frob >= static_cast<int>(file.f)) throw IngestError("Frobenius exponent out of range");
    if (!mat_inverse(*F, g.A)) throw IngestError("singular generator matrix");
  }
  if (file.hyperbolic_form) {
    if (file.n % 2) throw IngestError("hyperbolic form needs even dimension");
    QForm Q = QForm::hyperbolic(F, file.n / 2);
    for (auto& g : file.gens)
      if (!Q.preserved_by(g)) throw IngestError("generator does not preserve the hyperbolic form");
  }
  GroupHandle H(F, file.n, file.gens);
  if (file.order) {
    H.set_order_bound(*file.order);
    BigInt o;
    try {
      o = H.order();
    } catch (const std::logic_error&) {
      throw IngestError("group is larger than the declared order " + to_string(*file.order));
    }
    if (o != *file.order) throw IngestError("declared order " + to_string(*file.order) + " but found " + to_string(o));
  }
  return H;
}

GroupHandle ingest(const std::string& path) { return ingest(GeneratorFile::load(path)); }

}  // namespace plusfact
