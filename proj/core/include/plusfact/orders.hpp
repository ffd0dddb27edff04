#pragma once

#include "plusfact/grpcore.hpp"

namespace plusfact::orders {

BigInt sl(int n, uint64_t q);
BigInt su(int n, uint64_t q);
/// Sp_n(q), n even.
BigInt sp(int n, uint64_t q);
/// Omega^eps_n(q), n even, eps = +1 or -1.
BigInt omega_even(int n, int eps, uint64_t q);
/// Omega_n(q), n odd.
BigInt omega_odd(int n, uint64_t q);
BigInt g2(uint64_t q);

}  // namespace plusfact::orders
