#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "plusfact/constructions.hpp"
#include "plusfact/ingest.hpp"
#include "plusfact/verifier.hpp"

using namespace plusfact;

namespace {

std::pair<uint32_t, uint32_t> prime_power(uint64_t q) {
  for (uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    uint32_t f = 0;
    uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++f;
    }
    if (r != 1) break;
    return {p, f};
  }
  throw CLI::ValidationError("--q", "not a prime power: " + std::to_string(q));
}

struct RunArgs {
  std::string catalog;
  std::string filter;
  double budget_gb = 8;
  uint64_t seed = 1;
  int jobs = 1;
  std::string format = "table";
  bool timings = false;
};

void add_run_options(CLI::App* c, RunArgs& a) {
  c->add_option("--catalog", a.catalog, "claim catalog (JSON lines)")->required()->check(CLI::ExistingFile);
  c->add_option("--filter", a.filter, "glob on claim ids");
  c->add_option("--budget-gb", a.budget_gb, "memory budget in GiB")->capture_default_str();
  c->add_option("--seed", a.seed, "seed for randomized internals")->capture_default_str();
  c->add_option("--jobs", a.jobs, "claims run in parallel")->capture_default_str();
}

int run_catalog(const RunArgs& a) {
  SuiteOptions o;
  o.seed = a.seed;
  o.budget_gb = a.budget_gb;
  o.filter = a.filter;
  o.jobs = a.jobs;
  o.base_dir = std::filesystem::path(a.catalog).parent_path().string();
  auto cat = load_catalog(a.catalog);
  SuiteSummary s;
  auto rs = run_claim_suite(cat, o, &s);
  if (a.format == "json")
    std::cout << reports_json(rs, s, a.timings);
  else
    std::cout << reports_table(rs, s);
  return s.unexpected == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plusfact: factorizations of plus-type orthogonal groups at desk scale"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "construct a family and print its order and orbit statistics");
  FamilySpec fs;
  int m = 4;
  uint64_t q = 2, seed = 1;
  std::vector<std::string> points{"e1+f1"};
  build->add_option("--family", fs.family, "family id, or R, T, Omega")->required();
  build->add_option("--m", m, "Witt index")->capture_default_str();
  build->add_option("--q", q, "field size")->capture_default_str();
  build->add_option("--S", fs.S, "S for R_semidirect_S and SL_ext_in_T");
  build->add_option("--a", fs.a);
  build->add_option("--b", fs.b);
  build->add_option("--extra", fs.extra);
  build->add_option("--container", fs.container);
  build->add_option("--group-dim", fs.group_dim);
  build->add_option("--sub", fs.sub);
  build->add_option("--path", fs.path);
  build->add_option("--point", points, "points whose orbits are reported");
  build->add_option("--seed", seed)->capture_default_str();

  // claim run
  auto* claim = app.add_subcommand("claim", "claim catalog operations");
  claim->require_subcommand(1);
  auto* run = claim->add_subcommand("run", "verify the claims of a catalog");
  RunArgs ra;
  add_run_options(run, ra);

  // ingest check
  auto* ing = app.add_subcommand("ingest", "generator files");
  ing->require_subcommand(1);
  auto* check = ing->add_subcommand("check", "parse and verify a generator file");
  std::string file;
  check->add_option("file", file)->required()->check(CLI::ExistingFile);

  // report
  auto* report = app.add_subcommand("report", "run a catalog and print the machine-readable report");
  RunArgs rr;
  rr.format = "json";
  add_run_options(report, rr);
  report->add_option("--format", rr.format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  report->add_flag("--timings", rr.timings, "include per-claim seconds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      auto [p, f] = prime_power(q);
      QuadSpace V(Field::make(p, f), m);
      GroupHandle H = fs.family == "R"       ? build_R(V)
                      : fs.family == "T"     ? build_T(V)
                      : fs.family == "Omega" ? build_omega(V)
                                             : build_family(V, fs, seed);
      H.set_seed(seed);
      std::cout << "order " << to_string(H.order()) << '\n';
      for (auto& s : points) std::cout << "orbit " << s << ' ' << H.orbit(V.parse(s)).size() << '\n';
      return 0;
    }
    if (*run) return run_catalog(ra);
    if (*report) return run_catalog(rr);
    if (*check) {
      GeneratorFile g = GeneratorFile::load(file);
      GroupHandle H = ingest(g);
      std::cout << "ok: GF(" << g.p << '^' << g.f << "), dim " << g.n << ", " << g.gens.size() << " generators, order "
                << to_string(H.order()) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
