#pragma once

// Plain bit-packed Eratosthenes sieve over odd numbers.  This is the prime
// source for the Euler-product routes; the factor sieve keeps its own
// independent linear sieve.

#include <cmath>
#include <cstdint>
#include <vector>

#include "expos/errors.hpp"

namespace expos {

inline std::vector<std::uint32_t> prime_list(std::uint64_t limit) {
    if (limit > 0xFFFFFFFFULL)
        throw PreconditionError("prime_list: limit exceeds 2^32-1");
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    primes.reserve(limit > 100 ? static_cast<std::size_t>(
                                     static_cast<double>(limit) / std::log(static_cast<double>(limit)) * 1.15)
                               : 32);
    primes.push_back(2);
    if (limit < 3) return primes;
    // bit i represents the odd number 2i+3
    std::uint64_t nbits = (limit - 1) / 2;
    std::vector<std::uint64_t> composite((nbits + 63) / 64, 0);
    auto is_set = [&](std::uint64_t i) { return (composite[i >> 6] >> (i & 63)) & 1; };
    for (std::uint64_t i = 0; i < nbits; ++i) {
        if (is_set(i)) continue;
        std::uint64_t p = 2 * i + 3;
        primes.push_back(static_cast<std::uint32_t>(p));
        if (p * p > limit) continue;
        for (std::uint64_t j = (p * p - 3) / 2; j < nbits; j += p)
            composite[j >> 6] |= 1ULL << (j & 63);
    }
    return primes;
}

// upper bound for the n-th prime: p_n < n(ln n + ln ln n) for n >= 6
inline std::uint64_t nth_prime_upper(std::uint64_t n) {
    if (n < 6) return 13;
    double nd = static_cast<double>(n);
    return static_cast<std::uint64_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 2;
}

inline std::vector<std::uint32_t> first_n_primes(std::uint64_t n) {
    std::uint64_t limit = nth_prime_upper(n);
    std::vector<std::uint32_t> primes = prime_list(limit);
    while (primes.size() < n) {  // bound is proven, loop is a safety net
        limit += limit / 2;
        primes = prime_list(limit);
    }
    primes.resize(n);
    return primes;
}

}  // namespace expos
