#pragma once

// Harness tying exact counts to computed densities: count reports with the
// remainder envelope, the exact product decomposition identity, grid audits
// of the squarefree-coprime remainder bound, and the powerful-number
// two-term check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "expos/constants.hpp"
#include "expos/density.hpp"
#include "expos/errors.hpp"
#include "expos/exponent_set.hpp"
#include "expos/factor_sieve.hpp"
#include "expos/powerful.hpp"

namespace expos {

struct CountReport {
    std::uint64_t x = 0;
    std::uint64_t exact_count = 0;
    DensityResult density;
    long double main_term = 0.0L;           // density.value * x
    long double residual = 0.0L;            // exact_count - main_term
    long double envelope = 0.0L;            // sqrt(x) log(x) e^{c sqrt(log x)/log log x}
    long double normalized_residual = 0.0L; // |residual| / envelope
};

// remainder envelope; requires x >= 16 so log log x is positive
inline long double residual_envelope(std::uint64_t x) {
    if (x < 16) throw PreconditionError("envelope: x must be >= 16");
    const LemmaConstants& lc = lemma_constants();
    long double lx = std::log(static_cast<long double>(x));
    return std::sqrt(static_cast<long double>(x)) * lx *
           std::exp(lc.c * std::sqrt(lx) / std::log(lx));
}

// density via the product route (or the zero branch), with the prime limit
// raised until the certified bound is at most 1e-7
inline DensityResult density_for_verification(const ExponentSet& s) {
    if (!s.contains_one()) return density_zero_branch(s);
    std::uint64_t prime_limit = 10000000;  // 1e7 reaches ~1e-7 already
    for (;;) {
        DensityResult d = density_eq4(s, prime_limit);
        if (d.error_bound <= 1e-7L) return d;
        prime_limit *= 2;
    }
}

inline std::vector<CountReport> verify_density(const FactorSieve& sieve, const ExponentSet& s,
                                               const std::vector<std::uint64_t>& xs) {
    for (std::uint64_t x : xs) {
        if (x < 16) throw PreconditionError("verify_density: x must be >= 16");
        if (x > sieve.limit()) throw PreconditionError("verify_density: x exceeds sieve limit");
    }
    DensityResult d = density_for_verification(s);
    std::vector<std::uint64_t> counts = sieve.count_members_at(xs, s);
    std::vector<CountReport> reports(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CountReport& r = reports[i];
        r.x = xs[i];
        r.exact_count = counts[i];
        r.density = d;
        r.main_term = d.value * static_cast<long double>(r.x);
        r.residual = static_cast<long double>(r.exact_count) - r.main_term;
        r.envelope = residual_envelope(r.x);
        r.normalized_residual = std::fabs(r.residual) / r.envelope;
    }
    return reports;
}

// powerful S-numbers up to limit: the a-support of the decomposition
inline std::vector<std::uint64_t> powerful_s_numbers(const FactorSieve& sieve,
                                                     std::uint64_t limit,
                                                     const ExponentSet& s) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a : enumerate_powerful(limit)) {
        if (a == 1) { out.push_back(1); continue; }
        bool ok = true;
        for (const auto& pp : sieve.factorize(a).parts)
            if (!s.contains(pp.exponent)) { ok = false; break; }
        if (ok) out.push_back(a);
    }
    return out;
}

// Exact identity: every S-number factors uniquely as a*m with a a powerful
// S-number and m squarefree coprime to r(a), so
//   count(x) = b_1(x) + sum_{4 <= a <= x} b_{r(a)}(floor(x/a)).
// This must equal count_members exactly; it is an identity, not an asymptotic.
inline std::uint64_t count_via_decomposition(const FactorSieve& sieve, std::uint64_t x,
                                             const ExponentSet& s) {
    if (!s.contains_one())
        throw PreconditionError("decomposition requires 1 in S");
    if (x < 1 || x > sieve.limit())
        throw PreconditionError("decomposition: x outside sieve range");
    std::uint64_t total = sieve.count_squarefree_coprime(x, 1);
    for (std::uint64_t a : powerful_s_numbers(sieve, x, s)) {
        if (a == 1) continue;
        total += sieve.count_squarefree_coprime(x / a, sieve.factorize(a).radical());
    }
    return total;
}

// Exhaustive check of the identity for every x in [1, x_max]; returns the
// first mismatching x, or nullopt when the two sides agree everywhere.
// Works on whole prefix-count arrays so the full range costs a handful of
// linear sweeps instead of x_max separate evaluations.
inline std::optional<std::uint64_t> decomposition_first_mismatch(const FactorSieve& sieve,
                                                                 std::uint64_t x_max,
                                                                 const ExponentSet& s) {
    if (!s.contains_one())
        throw PreconditionError("decomposition requires 1 in S");
    if (x_max < 1 || x_max > sieve.limit())
        throw PreconditionError("decomposition: x_max outside sieve range");
    const std::size_t n = static_cast<std::size_t>(x_max);

    std::vector<std::uint64_t> direct(n + 1, 0);
    for (std::uint64_t i = 1; i <= x_max; ++i)
        direct[i] = direct[i - 1] + (sieve.is_member(i, s) ? 1 : 0);

    std::vector<std::uint8_t> squarefree(n + 1, 1);
    squarefree[0] = 0;
    for (std::uint32_t p : sieve.primes()) {
        std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
        if (p2 > x_max) break;
        for (std::uint64_t m = p2; m <= x_max; m += p2) squarefree[m] = 0;
    }

    // group the a-support by radical so each b_r prefix array is built once
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_radical;
    for (std::uint64_t a : powerful_s_numbers(sieve, x_max, s))
        by_radical[a == 1 ? 1 : sieve.factorize(a).radical()].push_back(a);

    std::vector<std::uint64_t> decomposed(n + 1, 0);
    std::vector<std::uint32_t> br(n + 1);
    for (const auto& [radical, as] : by_radical) {
        std::vector<std::uint64_t> rp;
        for (const auto& pp : sieve.factorize(radical).parts) rp.push_back(pp.prime);
        br[0] = 0;
        for (std::uint64_t m = 1; m <= x_max; ++m) {
            bool in = squarefree[m];
            if (in)
                for (std::uint64_t p : rp)
                    if (m % p == 0) { in = false; break; }
            br[m] = br[m - 1] + (in ? 1 : 0);
        }
        for (std::uint64_t a : as)
            for (std::uint64_t x = a; x <= x_max; ++x) decomposed[x] += br[x / a];
    }

    for (std::uint64_t x = 1; x <= x_max; ++x)
        if (decomposed[x] != direct[x]) return x;
    return std::nullopt;
}

struct Lemma1Row {
    std::uint64_t r = 0;
    std::uint64_t x = 0;
    std::uint64_t exact_count = 0;
    long double main_term = 0.0L;
    long double residual = 0.0L;
    long double bound = 0.0L;
    bool ok = false;
};

struct Lemma1Audit {
    std::vector<Lemma1Row> rows;  // deterministic (r, x) order
    bool all_ok = true;
};

inline Lemma1Audit audit_lemma1(const FactorSieve& sieve, std::vector<std::uint64_t> rs,
                                std::vector<std::uint64_t> xs) {
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Lemma1Audit audit;
    for (std::uint64_t r : rs) {
        for (std::uint64_t x : xs) {
            Lemma1Check c = check_lemma1_bound(sieve, x, r);
            audit.rows.push_back({r, x, c.count, c.main_term, c.residual, c.bound, c.ok});
            audit.all_ok = audit.all_ok && c.ok;
        }
    }
    return audit;
}

struct PowerfulRow {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    long double main_term = 0.0L;
    long double residual = 0.0L;   // count - main_term
    long double sixth_ratio = 0.0L;  // |residual| / x^{1/6}
};

inline std::vector<PowerfulRow> verify_powerful_asymptotic(const std::vector<std::uint64_t>& xs) {
    if (xs.empty()) throw PreconditionError("verify_powerful_asymptotic: xs must be nonempty");
    for (std::uint64_t x : xs)
        if (x < 1) throw PreconditionError("verify_powerful_asymptotic: x must be >= 1");
    std::uint64_t max_x = *std::max_element(xs.begin(), xs.end());
    std::vector<std::uint64_t> pw = enumerate_powerful(max_x);
    std::vector<PowerfulRow> rows;
    rows.reserve(xs.size());
    for (std::uint64_t x : xs) {
        PowerfulRow row;
        row.x = x;
        row.count = static_cast<std::uint64_t>(
            std::upper_bound(pw.begin(), pw.end(), x) - pw.begin());
        row.main_term = powerful_main_term(static_cast<long double>(x));
        row.residual = static_cast<long double>(row.count) - row.main_term;
        row.sixth_ratio = std::fabs(row.residual) /
                          std::pow(static_cast<long double>(x), 1.0L / 6.0L);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace expos
