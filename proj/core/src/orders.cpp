#include "plusfact/orders.hpp"

namespace plusfact::orders {

namespace {

BigInt pw(uint64_t q, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

BigInt sl(int n, uint64_t q) {
  BigInt r = pw(q, n * (n - 1) / 2);
  for (int i = 2; i <= n; ++i) r *= pw(q, i) - 1;
  return r;
}

BigInt su(int n, uint64_t q) {
  BigInt r = pw(q, n * (n - 1) / 2);
  for (int i = 2; i <= n; ++i) r *= (i % 2 == 0) ? pw(q, i) - 1 : pw(q, i) + 1;
  return r;
}

BigInt sp(int n, uint64_t q) {
  const int k = n / 2;
  BigInt r = pw(q, k * k);
  for (int i = 1; i <= k; ++i) r *= pw(q, 2 * i) - 1;
  return r;
}

BigInt omega_even(int n, int eps, uint64_t q) {
  const int m = n / 2;
  BigInt r = pw(q, m * (m - 1));
  r *= eps > 0 ? pw(q, m) - 1 : pw(q, m) + 1;
  for (int i = 1; i < m; ++i) r *= pw(q, 2 * i) - 1;
  if (q % 2 == 1) r /= 2;
  return r;
}

BigInt omega_odd(int n, uint64_t q) {
  const int k = (n - 1) / 2;
  BigInt r = pw(q, k * k);
  for (int i = 1; i <= k; ++i) r *= pw(q, 2 * i) - 1;
  if (q % 2 == 1) r /= 2;
  return r;
}

BigInt g2(uint64_t q) { return pw(q, 6) * (pw(q, 6) - 1) * (pw(q, 2) - 1); }

}  // namespace plusfact::orders
