#pragma once

#include <cstdint>
#include <vector>

namespace zetalab {

/// Primes <= n in increasing order (sieve of Eratosthenes). n up to ~1e8.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Moebius function of a single n >= 1 by trial division.
/// Returns 0 when n has a squared prime factor, else (-1)^#prime-factors.
int mobius(std::uint64_t n);

/// Moebius values mu(1..n) as a table (linear-time sieve variant).
std::vector<int> mobius_table(std::uint64_t n);

}  // namespace zetalab
