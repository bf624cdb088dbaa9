#pragma once

// Prime-exponent representation of an integer and sieve-free helpers
// (trial division) for the places that must not depend on a sieve table.

#include <cstdint>
#include <vector>

#include "expos/errors.hpp"

namespace expos {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// parts has strictly increasing primes and exponents >= 1; empty for n = 1.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> parts;

    // product of the distinct prime divisors; radical(1) = 1
    std::uint64_t radical() const {
        std::uint64_t r = 1;
        for (const auto& pp : parts) r *= pp.prime;
        return r;
    }

    bool is_squarefree() const {
        for (const auto& pp : parts)
            if (pp.exponent > 1) return false;
        return true;
    }
};

// O(sqrt n) trial division; fine for the small arguments it is used on
// (exponents, radicals, powerful numbers).
inline Factorization trial_factorization(std::uint64_t n) {
    if (n == 0) throw PreconditionError("trial_factorization: n must be >= 1");
    Factorization f;
    f.n = n;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        std::uint32_t e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        f.parts.push_back({p, e});
    }
    if (n > 1) f.parts.push_back({n, 1});
    return f;
}

inline bool trial_is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    if (n % 4 == 0) return false;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

}  // namespace expos
