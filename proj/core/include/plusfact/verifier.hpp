#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plusfact/constructions.hpp"
#include "plusfact/grpcore.hpp"

namespace plusfact {

/// The point, or tuple or set of points, whose stabilizer in Z is a factor.
struct ObjectSpec {
  std::vector<std::string> points;  ///< parsed by QuadSpace::parse
  bool setwise = false;             ///< stabilize the set instead of each point
};

/// One factor of a claim: a constructed family or a stabilizer in the ambient group.
/// For the qform method the factor is described by qform/fix_vector (X) or g2/derived (Y).
struct SideSpec {
  std::optional<FamilySpec> family;
  std::optional<ObjectSpec> object;
  std::string qform;        ///< "+" or "-": Omega of that form inside Sp_6
  bool fix_vector = false;  ///< additionally fix a nonsingular vector (Omega_5)
  bool derived = false;     ///< G2' instead of G2
  std::string doc;          ///< structural name, documentation only
};

struct AmbientSpec {
  std::string kind = "omega_plus";  ///< omega_plus (dim 2m) or sp6
  int m = 4;
  uint32_t p = 2, f = 1;
  std::vector<std::string> extras;  ///< gamma, phi adjoined to Omega
};

enum class Method { Transitivity, Order, ProductCoverage, QForm };
enum class Verdict { Confirmed, Refuted, Skipped, Error };

std::string to_string(Method m);
std::string to_string(Verdict v);

struct ClaimRecord {
  std::string id;
  std::string source;  ///< where the assertion comes from, free text
  AmbientSpec ambient;
  SideSpec x, y;
  std::optional<SideSpec> n;  ///< product_coverage: the group to enumerate
  Method method = Method::Transitivity;
  std::optional<BigInt> expected_index;
  /// Accepted values of |X cap Y|; two when scalar bookkeeping leaves a choice.
  std::vector<BigInt> expected_intersection;
  bool expect_confirmed = true;
  double needs_gb = 0;   ///< memory estimate; skipped when above the budget
  std::string skip;      ///< nonempty: cataloged but not run, with this reason
};

struct VerificationReport {
  std::string id;
  std::string source;
  Method method = Method::Transitivity;
  Verdict verdict = Verdict::Error;
  bool expect_confirmed = true;
  std::optional<BigInt> order_x, order_y, order_z, order_xy;
  std::optional<BigInt> orbit_x, orbit_z;  ///< transitivity method
  std::optional<BigInt> matched_intersection;
  bool expectation_mismatch = false;  ///< computed |X cap Y| or index not among the expected values
  std::string note;
  double seconds = 0;
  uint64_t seed = 0;

  /// The verdict differs from the catalog expectation, or the claim errored.
  bool unexpected() const;
};

struct SuiteOptions {
  uint64_t seed = 1;
  double budget_gb = 8;
  std::string filter;  ///< glob on ids, '*' and '?'
  int jobs = 1;
  std::string base_dir;  ///< relative ingested paths resolve against this
  /// Nonzero: transitivity and order claims replace the constructed factor by its conjugate under
  /// Z.random_element(conjugate_seed). Verdicts must not change.
  uint64_t conjugate_seed = 0;
};

struct SuiteSummary {
  int confirmed = 0, refuted = 0, refuted_expected = 0, skipped = 0, errors = 0, unexpected = 0;
};

VerificationReport check_factorization(const ClaimRecord& claim, const SuiteOptions& opts = {});

/// |X cap Stab_Z(omega)| = |X| / |omega^X|, after checking that y is the full stabilizer of
/// omega in z by orbit-stabilizer arithmetic.
BigInt intersection_order(GroupHandle& x, const PointSpec& omega, GroupHandle& y, GroupHandle& z);

/// Every element of n lies in HK, where K = Stab_Z(omega). n is enumerated from its chain.
bool check_product_coverage(GroupHandle& z, const GroupHandle& h, const PointSpec& omega, GroupHandle& k,
                            GroupHandle& n, uint64_t max_elements = uint64_t{1} << 20);

std::vector<VerificationReport> run_claim_suite(const std::vector<ClaimRecord>& catalog, const SuiteOptions& opts,
                                                SuiteSummary* summary = nullptr);

bool glob_match(const std::string& pattern, const std::string& s);

/// Catalog: JSON lines, first line {"schema":"plusfact-claims","version":1}.
std::vector<ClaimRecord> parse_catalog(std::istream& in);
std::vector<ClaimRecord> load_catalog(const std::string& path);

/// Timings are left out unless asked for, so that output is reproducible for a fixed seed.
std::string reports_json(const std::vector<VerificationReport>& rs, const SuiteSummary& s, bool timings = false);
std::string reports_table(const std::vector<VerificationReport>& rs, const SuiteSummary& s);

}  // namespace plusfact
