#pragma once

// Group orders for expected values, derived from orbit counting rather than the
// library's closed forms: |G| = |orbit of a vector| * |stabilizer| applied recursively.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace oracle {

using Big = boost::multiprecision::cpp_int;

inline Big pw(uint64_t q, int e) {
  Big r = 1;
  while (e-- > 0) r *= q;
  return r;
}

/// GL_n acts regularly on ordered bases.
inline Big gl(int n, uint64_t q) {
  Big r = 1;
  for (int i = 0; i < n; ++i) r *= pw(q, n) - pw(q, i);
  return r;
}

inline Big sl(int n, uint64_t q) { return gl(n, q) / (q - 1); }

/// Sp_{2k}: transitive on nonzero vectors; the stabilizer of v is q^{2k-1}.Sp_{2k-2}.
inline Big sp(int n, uint64_t q) {
  if (n == 0) return 1;
  return (pw(q, n) - 1) * pw(q, n - 1) * sp(n - 2, q);
}

/// Nonzero singular vectors of a 2m-dimensional space of type eps.
inline Big singular_count(int m, int eps, uint64_t q) {
  Big a = pw(q, m), b = pw(q, m - 1);
  if (eps > 0) return (a - 1) * (b + 1);
  return (a + 1) * (b - 1);
}

/// Full isometry group O^eps_{2m}: transitive on nonzero singular vectors, the stabilizer of one
/// is q^{2m-2}.O^eps_{2m-2}.
inline Big o_even(int m, int eps, uint64_t q) {
  if (m == 1) return eps > 0 ? Big(2 * (q - 1)) : Big(2 * (q + 1));
  return singular_count(m, eps, q) * pw(q, 2 * m - 2) * o_even(m - 1, eps, q);
}

/// Omega^eps_{2m}: index 2 in O for q even, index 4 for q odd.
inline Big omega_even(int m, int eps, uint64_t q) { return o_even(m, eps, q) / (q % 2 ? 4 : 2); }

/// Omega_{2k+1}: isomorphic to Sp_{2k} for q even; for q odd the stabilizer of a
/// nonsingular vector of plus type in O_{2k+2}^+ is O_{2k+1}, and Omega has index 4 in O_{2k+1}.
inline Big omega_odd(int n, uint64_t q) {
  const int k = (n - 1) / 2;
  if (q % 2 == 0) return sp(2 * k, q);
  // O_{2k+1} = |O^+_{2k+2}| / #(vectors with a fixed nonzero square Q-value)
  // #{v : Q(v) = c} in a plus-type 2k+2 space is q^{2k+1} - q^k for c != 0.
  Big o = o_even(k + 1, +1, q) / (pw(q, 2 * k + 1) - pw(q, k));
  return o / 2 / 2;
}

/// SU_n(q): isometries of a Hermitian form over GF(q^2) with determinant 1. GU_n is transitive on
/// nonzero isotropic vectors, of which there are (q^n - (-1)^n)(q^{n-1} - (-1)^{n-1}).
inline Big gu(int n, uint64_t q) {
  if (n == 0) return 1;
  if (n == 1) return q + 1;
  auto sgn = [](int e) { return e % 2 ? Big(-1) : Big(1); };
  Big iso = (pw(q, n) - sgn(n)) * (pw(q, n - 1) - sgn(n - 1));
  // stabilizer of an isotropic vector: q^{2n-3} . GU_{n-2} . GL_1(q^2)-part acting on <v,w>
  // fixing v: order q^{1 + 2(n-2)} * |GU_{n-2}|
  return iso * pw(q, 2 * n - 3) * gu(n - 2, q);
}

inline Big su(int n, uint64_t q) { return gu(n, q) / (q + 1); }

/// |G2(q)| = q^6 (q^6 - 1)(q^2 - 1).
inline Big g2(uint64_t q) { return pw(q, 6) * (pw(q, 6) - 1) * (pw(q, 2) - 1); }

inline uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace oracle
