#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "plusfact/verifier.hpp"

using namespace plusfact;

namespace {

const char* kHeader = "{\"schema\": \"plusfact-claims\", \"version\": 1}\n";

std::vector<ClaimRecord> catalog(const std::string& lines) {
  std::istringstream is(kHeader + lines);
  return parse_catalog(is);
}

// Fills in method and expect when a test line leaves them out.
std::string complete(std::string line) {
  if (line.find("\"method\"") == std::string::npos) line.insert(line.size() - 1, R"(, "method": "transitivity")");
  if (line.find("\"expect\"") == std::string::npos) line.insert(line.size() - 1, R"(, "expect": "confirmed")");
  return line;
}

VerificationReport run_one(const std::string& line) {
  auto c = catalog(complete(line) + "\n");
  REQUIRE(c.size() == 1);
  return check_factorization(c[0]);
}

const std::string kAmb = R"("ambient": {"m": 4, "p": 2, "f": 1})";
const std::string kN1 = R"("y": {"stabilizer": ["e1+f1"]})";

}  // namespace

TEST_CASE("catalog header") {
  CHECK(catalog("").empty());
  std::istringstream bad("{\"schema\": \"other\", \"version\": 1}\n");
  CHECK_THROWS(parse_catalog(bad));
  std::istringstream later("{\"schema\": \"plusfact-claims\", \"version\": 9}\n");
  CHECK_THROWS(parse_catalog(later));
  CHECK_THROWS(catalog("{\"id\": \"x\", \"method\": \"guess\"}\n"));
}

TEST_CASE("empty suite") {
  SuiteSummary s;
  auto rs = run_claim_suite({}, {}, &s);
  CHECK(rs.empty());
  CHECK(s.confirmed + s.refuted + s.skipped + s.errors + s.unexpected == 0);
  CHECK(reports_table(rs, s).find("confirmed: 0, refuted: 0") != std::string::npos);
}

TEST_CASE("T times N1 by transitivity and by orders") {
  for (std::string method : {"transitivity", "order"}) {
    auto r = run_one(R"({"id": "t", )" + kAmb + R"(, "x": {"family": "T"}, )" + kN1 + R"(, "method": ")" + method +
                     R"(", "expected_intersection": [168]})");
    CAPTURE(method);
    CHECK(r.verdict == Verdict::Confirmed);
    CHECK_FALSE(r.unexpected());
    CHECK(r.order_x == oracle::sl(4, 2));
    CHECK(r.order_z == oracle::omega_even(4, +1, 2));
    CHECK(r.matched_intersection == oracle::sl(3, 2));
  }
}

TEST_CASE("Omega itself and the trivial group") {
  auto full = run_one(R"({"id": "o", )" + kAmb + R"(, "x": {"family": "Omega"}, )" + kN1 + "}");
  CHECK(full.verdict == Verdict::Confirmed);
  CHECK(full.order_xy == oracle::sp(6, 2));

  auto triv = run_one(R"({"id": "1", )" + kAmb + R"(, "x": {"family": "trivial"}, )" + kN1 +
                      R"(, "expect": "refuted"})");
  CHECK(triv.verdict == Verdict::Refuted);
  CHECK(triv.order_xy == 1);
  CHECK_FALSE(triv.unexpected());
}

TEST_CASE("wrong expected intersection is flagged") {
  auto r = run_one(R"({"id": "w", )" + kAmb + R"(, "x": {"family": "T"}, )" + kN1 +
                   R"(, "expected_intersection": [169]})");
  CHECK(r.verdict == Verdict::Confirmed);
  CHECK(r.expectation_mismatch);
  CHECK(r.unexpected());
}

TEST_CASE("two families meet by enumeration") {
  auto r = run_one(R"({"id": "ff", )" + kAmb + R"(, "x": {"family": "T"}, "y": {"family": "N1_stab"}, "method": "order"})");
  CHECK(r.verdict == Verdict::Confirmed);
  auto t = run_one(R"({"id": "ft", )" + kAmb + R"(, "x": {"family": "T"}, "y": {"family": "N1_stab"}})");
  CHECK(t.verdict == Verdict::Error);
  CHECK(r.order_xy == oracle::sl(3, 2));
}

TEST_CASE("product coverage") {
  auto triv = run_one(R"({"id": "c1", )" + kAmb + R"(, "x": {"family": "trivial"}, )" + kN1 +
                      R"(, "method": "product_coverage", "n": {"family": "trivial"}})");
  CHECK(triv.verdict == Verdict::Confirmed);
  auto none = run_one(R"({"id": "c2", )" + kAmb + R"(, "x": {"family": "trivial"}, )" + kN1 +
                      R"(, "method": "product_coverage", "n": {"family": "R"}, "expect": "refuted"})");
  CHECK(none.verdict == Verdict::Refuted);
}

TEST_CASE("skips") {
  auto s1 = run_one(R"({"id": "s", )" + kAmb + R"(, "x": {"family": "T"}, )" + kN1 + R"(, "skip": "not modelled"})");
  CHECK(s1.verdict == Verdict::Skipped);
  CHECK(s1.note.find("not modelled") != std::string::npos);
  CHECK_FALSE(s1.unexpected());

  auto c = catalog(complete(R"({"id": "big", )" + kAmb + R"(, "x": {"family": "T"}, )" + kN1 + R"(, "needs_gb": 64})") + "\n");
  SuiteOptions o;
  o.budget_gb = 1;
  CHECK(run_claim_suite(c, o)[0].verdict == Verdict::Skipped);

  auto g = run_one(R"({"id": "g", )" + kAmb + R"(, "x": {"family": "ingested", "path": "no/such.gens"}, )" + kN1 + "}");
  CHECK(g.verdict == Verdict::Skipped);
}

TEST_CASE("suite ordering, filter and JSON determinism") {
  std::string lines = complete(R"({"id": "b.two", )" + kAmb + R"(, "x": {"family": "T"}, )" + kN1 + "}") + "\n" +
                      complete(R"({"id": "a.one", )" + kAmb + R"(, "x": {"family": "Omega"}, )" + kN1 + "}") + "\n" +
                      complete(R"({"id": "c.three", )" + kAmb + R"(, "x": {"family": "trivial"}, )" + kN1 + "}") + "\n";
  auto c = catalog(lines);
  SuiteOptions o;
  o.jobs = 3;
  SuiteSummary s1, s2;
  auto r1 = run_claim_suite(c, o, &s1);
  REQUIRE(r1.size() == 3);
  CHECK(r1[0].id == "a.one");
  CHECK(r1[2].id == "c.three");
  CHECK(s1.confirmed == 2);
  CHECK(s1.refuted == 1);
  CHECK(s1.unexpected == 1);  // c.three is expected to be confirmed by default

  o.jobs = 1;
  auto r2 = run_claim_suite(c, o, &s2);
  CHECK(reports_json(r1, s1) == reports_json(r2, s2));
  CHECK(reports_json(r1, s1).find("plusfact-report") != std::string::npos);

  o.filter = "?.t*";
  CHECK(run_claim_suite(c, o).size() == 2);
}

TEST_CASE("glob") {
  CHECK(glob_match("*", ""));
  CHECK(glob_match("row0?.*", "row04.m4q2"));
  CHECK_FALSE(glob_match("row0?", "row10"));
  CHECK(glob_match("*q2*", "sp6g2.q2.G2"));
}
