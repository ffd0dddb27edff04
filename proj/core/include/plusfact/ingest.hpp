#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plusfact/grpcore.hpp"

namespace plusfact {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented generator file:
///
///   plusfact-generators 1
///   field <p> <f>
///   dim <n>
///   count <k>
///   frob <j_1> ... <j_k>        (optional)
///   order <N>                   (optional post-check)
///   form hyperbolic             (optional post-check: all generators preserve the standard Q)
///   matrix
///   <n rows of n field indices>
///   ...                         (k matrix blocks)
///   checksum <c>
///
/// '#' starts a comment. The checksum is the FNV-1a 64-bit hash of all matrix entries and
/// Frobenius exponents written as decimal tokens separated by single spaces.
struct GeneratorFile {
  uint32_t p = 2, f = 1;
  int n = 0;
  std::vector<GroupElt> gens;
  std::optional<BigInt> order;
  bool hyperbolic_form = false;

  static GeneratorFile parse(std::istream& in);
  static GeneratorFile load(const std::string& path);
  void write(std::ostream& out) const;
  uint64_t checksum() const;
};

/// Handle from a generator file; runs the declared post-checks.
GroupHandle ingest(const std::string& path);
GroupHandle ingest(const GeneratorFile& file);

}  // namespace plusfact
