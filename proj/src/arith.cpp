#include "zetalab/arith.hpp"

#include "zetalab/errors.hpp"

namespace zetalab {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    if (n > 200'000'000ULL) raise(errc::range_exceeded, "sieve bound above 2e8");
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    }
    for (std::uint64_t p = 2; p <= n; ++p)
        if (!composite[p]) out.push_back(p);
    return out;
}

int mobius(std::uint64_t n) {
    if (n == 0) raise(errc::invalid_argument, "mobius(0) undefined");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<int> mobius_table(std::uint64_t n) {
    // Standard linear sieve: track smallest prime factor implicitly.
    std::vector<int> mu(n + 1, 0);
    std::vector<std::uint64_t> primes;
    std::vector<bool> composite(n + 1, false);
    if (n >= 1) mu[1] = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint64_t p : primes) {
            if (i * p > n) break;
            composite[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    return mu;
}

}  // namespace zetalab
