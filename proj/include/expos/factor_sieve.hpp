#pragma once

// Smallest-prime-factor table up to a configurable limit, plus the exact
// counting operations built on it: membership counts for an exponent set,
// squarefree counts coprime to a modulus, and the explicit remainder-bound
// check for the latter.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "expos/constants.hpp"
#include "expos/errors.hpp"
#include "expos/exponent_set.hpp"
#include "expos/factorization.hpp"

namespace expos {

class FactorSieve {
public:
    // linear sieve: every composite is crossed exactly once
    explicit FactorSieve(std::uint64_t limit, std::uint64_t memory_cap = kDefaultSieveCap) {
        if (limit < 2) throw PreconditionError("build_sieve: limit must be >= 2");
        if (limit > memory_cap)
            throw ResourceCapError("build_sieve: limit " + std::to_string(limit) +
                                   " exceeds sieve cap " + std::to_string(memory_cap));
        limit_ = limit;
        spf_.assign(limit + 1, 0);
        primes_.reserve(static_cast<std::size_t>(
            static_cast<double>(limit) / std::log(static_cast<double>(limit)) * 1.15));
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes_.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes_) {
                if (p > spf_[i] || i * p > limit) break;
                spf_[i * p] = p;
            }
        }
    }

    std::uint64_t limit() const noexcept { return limit_; }
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    std::uint32_t spf(std::uint64_t n) const {
        check_range(n);
        if (n < 2) throw PreconditionError("spf: n must be >= 2");
        return spf_[n];
    }

    Factorization factorize(std::uint64_t n) const {
        check_range(n);
        Factorization f;
        f.n = n;
        while (n > 1) {
            std::uint32_t p = spf_[n];
            std::uint32_t e = 0;
            do {
                n /= p;
                ++e;
            } while (n > 1 && spf_[n] == p);
            f.parts.push_back({p, e});
        }
        return f;
    }

    // 1 iff every exponent e in the factorization of n has u_S(e) = 1;
    // n = 1 belongs to E(S) for every S
    bool is_member(std::uint64_t n, const ExponentSet& s) const {
        check_range(n);
        while (n > 1) {
            std::uint32_t p = spf_[n];
            std::uint32_t e = 0;
            do {
                n /= p;
                ++e;
            } while (n > 1 && spf_[n] == p);
            if (!s.contains(e)) return false;
        }
        return true;
    }

    std::uint64_t count_members(std::uint64_t x, const ExponentSet& s) const {
        return count_members_at({x}, s)[0];
    }

    // counts at several thresholds from one sweep; results align with xs
    std::vector<std::uint64_t> count_members_at(const std::vector<std::uint64_t>& xs,
                                                const ExponentSet& s) const {
        std::vector<std::uint64_t> counts(xs.size(), 0);
        if (xs.empty()) return counts;
        for (std::uint64_t x : xs) {
            if (x < 1) throw PreconditionError("count_members: x must be >= 1");
            check_range(x);
        }
        std::vector<std::size_t> order(xs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
        std::uint64_t max_x = xs[order.back()];
        std::uint64_t running = 0;
        std::size_t next = 0;
        for (std::uint64_t n = 1; n <= max_x; ++n) {
            running += is_member(n, s) ? 1 : 0;
            while (next < order.size() && xs[order[next]] == n)
                counts[order[next++]] = running;
        }
        return counts;
    }

    bool is_squarefree(std::uint64_t n) const {
        check_range(n);
        while (n > 1) {
            std::uint32_t p = spf_[n];
            n /= p;
            if (n > 1 && spf_[n] == p) return false;
        }
        return true;
    }

    int mobius(std::uint64_t n) const {
        check_range(n);
        int sign = 1;
        while (n > 1) {
            std::uint32_t p = spf_[n];
            n /= p;
            if (n > 1 && spf_[n] == p) return 0;
            sign = -sign;
        }
        return sign;
    }

    // b_r(x) = |{n <= x : n squarefree, gcd(n, r) = 1}| via the identity
    //   b_r(x) = sum_{d <= sqrt x, gcd(d,r)=1} mu(d) * |{m <= x/d^2 : gcd(m,r)=1}|
    // which is a code path independent of count_members.
    std::uint64_t count_squarefree_coprime(std::uint64_t x, std::uint64_t r) const {
        if (x < 1) throw PreconditionError("count_squarefree_coprime: x must be >= 1");
        check_range(x);
        Factorization rf = require_squarefree(r);

        // signed divisor list (e, mu(e)) of r
        std::vector<std::pair<std::uint64_t, int>> divs{{1, 1}};
        for (const auto& pp : rf.parts) {
            std::size_t sz = divs.size();
            for (std::size_t i = 0; i < sz; ++i)
                divs.emplace_back(divs[i].first * pp.prime, -divs[i].second);
        }
        auto coprime_count = [&](std::uint64_t y) {
            std::int64_t c = 0;
            for (const auto& [e, sgn] : divs)
                c += sgn * static_cast<std::int64_t>(y / e);
            return c;
        };

        std::int64_t total = 0;
        for (std::uint64_t d = 1; d * d <= x; ++d) {
            int mu = mobius(d);
            if (mu == 0) continue;
            bool coprime = true;
            for (const auto& pp : rf.parts)
                if (d % pp.prime == 0) { coprime = false; break; }
            if (!coprime) continue;
            total += mu * coprime_count(x / (d * d));
        }
        return static_cast<std::uint64_t>(total);
    }

private:
    void check_range(std::uint64_t n) const {
        if (n < 1 || n > limit_)
            throw PreconditionError("value " + std::to_string(n) + " outside sieve range [1, " +
                                    std::to_string(limit_) + "]");
    }

    Factorization require_squarefree(std::uint64_t r) const {
        if (r < 1) throw PreconditionError("modulus r must be >= 1");
        Factorization rf = factorize(r);
        if (!rf.is_squarefree())
            throw PreconditionError("modulus r = " + std::to_string(r) + " is not squarefree");
        return rf;
    }

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline FactorSieve build_sieve(std::uint64_t limit,
                               std::uint64_t memory_cap = kDefaultSieveCap) {
    return FactorSieve(limit, memory_cap);
}

// main term of b_r(x): (6/pi^2) * x * prod_{p|r} p/(p+1)
inline long double br_main_term(long double x, std::uint64_t r) {
    if (r < 1) throw PreconditionError("br_main_term: r must be >= 1");
    Factorization rf = trial_factorization(r);
    if (!rf.is_squarefree())
        throw PreconditionError("br_main_term: r = " + std::to_string(r) + " is not squarefree");
    long double v = kSixOverPiSq * x;
    for (const auto& pp : rf.parts) {
        long double p = static_cast<long double>(pp.prime);
        v *= p / (p + 1.0L);
    }
    return v;
}

struct Lemma1Check {
    std::uint64_t count;
    long double main_term;
    long double residual;  // |count - main_term|
    long double bound;
    bool ok;
};

inline Lemma1Check check_lemma1_bound(const FactorSieve& sieve, std::uint64_t x,
                                      std::uint64_t r) {
    const LemmaConstants& lc = lemma_constants();
    Lemma1Check out;
    out.count = sieve.count_squarefree_coprime(x, r);
    out.main_term = br_main_term(static_cast<long double>(x), r);
    out.residual = std::fabs(static_cast<long double>(out.count) - out.main_term);
    long double sx = std::sqrt(static_cast<long double>(x));
    if (r <= lc.big_n) {
        out.bound = (r == 1 ? lc.k1 : lc.k) * sx;
    } else {
        // log log r must be positive; r > big_n >> 16 guarantees it
        if (r < 16) throw PreconditionError("remainder bound: r < 16 in large branch");
        long double lr = std::log(static_cast<long double>(r));
        out.bound = lc.k * std::exp(lc.c * std::sqrt(lr) / std::log(lr)) * sx;
    }
    out.ok = out.residual <= out.bound;
    return out;
}

}  // namespace expos
