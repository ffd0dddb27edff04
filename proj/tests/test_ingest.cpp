#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "plusfact/constructions.hpp"
#include "plusfact/ingest.hpp"

using namespace plusfact;

namespace {

GeneratorFile from_handle(const GroupHandle& H) {
  GeneratorFile g;
  g.p = H.field().p();
  g.f = H.field().f();
  g.n = H.dim();
  g.gens = H.generators();
  return g;
}

std::string serialize(const GeneratorFile& g) {
  std::ostringstream os;
  g.write(os);
  return os.str();
}

GeneratorFile reparse(const std::string& text) {
  std::istringstream is(text);
  return GeneratorFile::parse(is);
}

}  // namespace

TEST_CASE("write and parse round trip") {
  QuadSpace V(Field::make(2, 2), 3);
  auto g = from_handle(build_T(V));
  g.order = oracle::sl(3, 4);
  g.hyperbolic_form = true;
  auto back = reparse(serialize(g));
  CHECK(back.p == 2);
  CHECK(back.f == 2);
  CHECK(back.n == 6);
  CHECK(back.gens == g.gens);
  CHECK(back.order == g.order);
  CHECK(back.hyperbolic_form);
  CHECK(back.checksum() == g.checksum());
  CHECK(ingest(back).order() == oracle::sl(3, 4));
}

TEST_CASE("file round trip with Frobenius parts") {
  auto F = Field::make(2, 2);
  Mat w = Mat::identity(1);
  w(0, 0) = F->gen();
  GeneratorFile g;
  g.f = 2;
  g.n = 1;
  g.gens = {{w, 0}, {Mat::identity(1), 1}};
  g.order = 6;
  auto path = std::filesystem::temp_directory_path() / "plusfact_ingest_roundtrip.gens";
  {
    std::ofstream out(path);
    g.write(out);
  }
  auto H = ingest(path.string());
  CHECK(H.order() == 6);
  std::filesystem::remove(path);
}

TEST_CASE("identity-only file gives the trivial group") {
  GeneratorFile g;
  g.n = 4;
  g.gens = {{Mat::identity(4), 0}};
  auto H = ingest(reparse(serialize(g)));
  CHECK(H.order() == 1);
}

TEST_CASE("malformed files are rejected") {
  GeneratorFile g;
  g.n = 2;
  g.gens = {{Mat::identity(2), 0}};
  std::string good = serialize(g);
  CHECK_NOTHROW(reparse(good));

  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
  };
  CHECK_THROWS_AS(reparse(replace("plusfact-generators", "generators")), IngestError);
  CHECK_THROWS_AS(reparse(replace("checksum", "# checksum")), IngestError);
  CHECK_THROWS_AS(reparse(replace("1 0\n", "1 1\n")), IngestError);  // checksum no longer matches
  CHECK_THROWS_AS(reparse(replace("1 0\n", "1 2\n")), IngestError);  // entry not below q
  CHECK_THROWS_AS(reparse(good + "dim 3\n"), IngestError);
  CHECK_THROWS_AS(reparse("plusfact-generators 2\n"), IngestError);
  CHECK_THROWS_AS(GeneratorFile::load("/nonexistent/plusfact.gens"), IngestError);
}

TEST_CASE("post-checks") {
  GeneratorFile g;
  g.n = 2;
  Mat zero(2);
  g.gens = {{zero, 0}};
  CHECK_THROWS_WITH_AS(ingest(reparse(serialize(g))), "singular generator matrix", IngestError);

  Mat t = Mat::identity(2);
  t(0, 1) = 1;
  g.gens = {{t, 0}};
  g.hyperbolic_form = true;
  CHECK_THROWS_AS(ingest(reparse(serialize(g))), IngestError);

  g.hyperbolic_form = false;
  g.order = 3;
  CHECK_THROWS_AS(ingest(reparse(serialize(g))), IngestError);
  g.order = 2;
  CHECK(ingest(reparse(serialize(g))).order() == 2);
}
