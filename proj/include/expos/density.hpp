#pragma once

// Density h(E(S)) of the integers whose prime-factorization exponents all
// lie in S, by three independent routes, each returning a value together
// with a certified absolute truncation bound:
//
//   eq4   prod_p (1 + sum_{i>=2} (u(i)-u(i-1)) p^{-i})
//   eq11  (6/pi^2) prod_p (1 + (1 - 1/(p+1)) sum_{i>=2} p^{-s(i)})
//   eq8   (6/pi^2) sum over powerful S-numbers a of prod_{p|r(a)} p/(p+1) / a
//
// plus the per-prime-family product (eq13) and the gap interval between
// densities of sets containing 2 and sets omitting it.
//
// Error bookkeeping for the product routes.  Any valid S with 1 in S has
//   |t_p| <= sum_{i>=2} p^{-i} = 1/(p(p-1))   and   t_p >= -1/(p^2-1)
// (two consecutive drops are impossible), hence |log(1+t_p)| <= 1/(p(p-1)).
// Summed over p > P and telescoped over integers this gives the outer tail
//   sum_{p>P} |log(1+t_p)| <= sum_{n>P} 1/(n(n-1)) = 1/P,
// so the truncated product is off by a factor within [e^{-1/P}, e^{1/P}].
// Inner truncation of each factor at depth I(p) leaves a geometric tail
// tau_p = p^{-I(p)}/(p-1), chosen <= eps/(2 pi(P)); its log contribution is
// tau_p/(f_p - tau_p).  Both pieces are folded into
//   error_bound = value * expm1(1/P + sum_p tau_p/(f_p - tau_p)) + rounding slack.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expos/constants.hpp"
#include "expos/errors.hpp"
#include "expos/exponent_set.hpp"
#include "expos/factorization.hpp"
#include "expos/powerful.hpp"
#include "expos/primes.hpp"

namespace expos {

enum class Route { Eq4, Eq11, Eq8, Eq13 };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::Eq4: return "eq4";
        case Route::Eq11: return "eq11";
        case Route::Eq8: return "eq8";
        case Route::Eq13: return "eq13";
    }
    return "?";
}

struct DensityResult {
    long double value = 0.0L;
    long double error_bound = 0.0L;  // certified: |value - h| <= error_bound
    std::uint64_t prime_limit = 0;   // largest prime admitted into the product
    std::uint64_t a_limit = 0;       // powerful-sum truncation (eq8 only)
    std::uint32_t exponent_depth = 0;  // deepest inner exponent index summed
    Route route = Route::Eq4;
};

namespace detail {

struct Kahan {
    long double sum = 0.0L, carry = 0.0L;
    void add(long double x) {
        long double y = x - carry;
        long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// fixed summation order: increasing p, increasing i; factor count decides
// direct vs log-space accumulation
constexpr std::size_t kLogSpaceThreshold = 100000;

inline void require_product_preconditions(const ExponentSet& s, std::uint64_t prime_limit,
                                          long double eps) {
    if (!s.contains_one())
        throw PreconditionError("density product route requires 1 in S (use the zero branch)");
    if (prime_limit < 2) throw PreconditionError("prime_limit must be >= 2");
    if (!(eps > 0.0L && eps <= 0.25L))
        throw PreconditionError("eps must lie in (0, 0.25]");
}

// inner truncation depth: p^{-I} <= eps/(2 pi(P)), never less than 2
inline std::uint32_t inner_depth(long double log_k, std::uint64_t p) {
    long double d = std::ceil(log_k / std::log(static_cast<long double>(p)));
    if (!(d >= 2.0L)) return 2;
    if (d > 16384.0L) return 16384;
    return static_cast<std::uint32_t>(d);
}

}  // namespace detail

// h = 0 branch: every S-number above 1 is powerful, a zero-density set
inline DensityResult density_zero_branch(const ExponentSet& s) {
    if (s.contains_one())
        throw PreconditionError("zero branch requires 1 not in S (use a product route)");
    DensityResult r;
    r.value = 0.0L;
    r.error_bound = 0.0L;
    r.route = Route::Eq4;
    return r;
}

inline DensityResult density_eq4(const ExponentSet& s, std::uint64_t prime_limit,
                                 long double eps = 1e-9L) {
    detail::require_product_preconditions(s, prime_limit, eps);
    const std::vector<std::uint32_t> primes = prime_list(prime_limit);
    const long double n_primes = static_cast<long double>(primes.size());
    const long double log_k = std::log(2.0L * n_primes / eps);
    const std::optional<std::uint64_t> support = s.diff_support_end();

    const bool log_space = primes.size() > detail::kLogSpaceThreshold;
    long double product = 1.0L;
    detail::Kahan log_sum;
    detail::Kahan inner_log_tail;
    std::uint32_t max_depth = 0;

    for (std::uint32_t p : primes) {
        std::uint32_t depth = detail::inner_depth(log_k, p);
        long double tau = 0.0L;
        if (support && *support <= std::max<std::uint64_t>(depth, 64)) {
            depth = static_cast<std::uint32_t>(*support);  // finite support: exact
        } else {
            tau = std::pow(static_cast<long double>(p), -static_cast<long double>(depth)) /
                  (static_cast<long double>(p) - 1.0L);
        }
        max_depth = std::max(max_depth, depth);

        long double t = 0.0L;
        long double power = 1.0L / (static_cast<long double>(p) * static_cast<long double>(p));
        bool prev = true;  // u(1) = 1
        for (std::uint32_t i = 2; i <= depth; ++i) {
            bool cur = s.contains(i);
            if (cur != prev) t += cur ? power : -power;
            prev = cur;
            power /= static_cast<long double>(p);
        }
        long double f = 1.0L + t;
        if (log_space)
            log_sum.add(std::log(f));
        else
            product *= f;
        if (tau > 0.0L) inner_log_tail.add(tau / (f - tau));
    }

    DensityResult r;
    r.value = log_space ? std::exp(log_sum.sum) : product;
    if (r.value > 1.0L) r.value = 1.0L;
    long double outer = 1.0L / static_cast<long double>(prime_limit);
    long double slack = r.value * (n_primes * 1e-18L + 1e-17L);
    r.error_bound = r.value * std::expm1(outer + inner_log_tail.sum) + slack;
    r.prime_limit = prime_limit;
    r.exponent_depth = max_depth;
    r.route = Route::Eq4;
    return r;
}

inline DensityResult density_eq11(const ExponentSet& s, std::uint64_t prime_limit,
                                  long double eps = 1e-9L) {
    detail::require_product_preconditions(s, prime_limit, eps);
    const std::vector<std::uint32_t> primes = prime_list(prime_limit);
    const long double n_primes = static_cast<long double>(primes.size());
    const long double log_k = std::log(2.0L * n_primes / eps);
    const std::optional<std::uint64_t> max_elem = s.max_element();

    const bool log_space = primes.size() > detail::kLogSpaceThreshold;
    long double product = 1.0L;
    detail::Kahan log_sum;
    detail::Kahan inner_log_tail;
    std::uint32_t max_depth = 0;

    for (std::uint32_t p : primes) {
        std::uint32_t depth = detail::inner_depth(log_k, p);
        long double tau = 0.0L;
        if (max_elem && *max_elem <= std::max<std::uint64_t>(depth, 64)) {
            depth = static_cast<std::uint32_t>(*max_elem);  // all of S summed: exact
        } else {
            tau = std::pow(static_cast<long double>(p), -static_cast<long double>(depth)) /
                  (static_cast<long double>(p) - 1.0L);
        }
        max_depth = std::max(max_depth, depth);

        long double inner = 0.0L;
        long double power = 1.0L / (static_cast<long double>(p) * static_cast<long double>(p));
        for (std::uint32_t i = 2; i <= depth; ++i) {
            if (s.contains(i)) inner += power;
            power /= static_cast<long double>(p);
        }
        long double weight = static_cast<long double>(p) / (static_cast<long double>(p) + 1.0L);
        long double g = 1.0L + weight * inner;
        if (log_space)
            log_sum.add(std::log(g));
        else
            product *= g;
        if (tau > 0.0L) inner_log_tail.add(weight * tau / (g - weight * tau));
    }

    DensityResult r;
    r.value = kSixOverPiSq * (log_space ? std::exp(log_sum.sum) : product);
    if (r.value > 1.0L) r.value = 1.0L;
    long double outer = 1.0L / static_cast<long double>(prime_limit);
    long double slack = r.value * (n_primes * 1e-18L + 1e-17L);
    r.error_bound = r.value * std::expm1(outer + inner_log_tail.sum) + slack;
    r.prime_limit = prime_limit;
    r.exponent_depth = max_depth;
    r.route = Route::Eq11;
    return r;
}

// sum over powerful S-numbers a <= a_limit of prod_{p|r(a)} p/(p+1) * 1/a,
// scaled by 6/pi^2; the a = 1 term contributes the empty product
inline DensityResult density_eq8_sum_form(const ExponentSet& s, std::uint64_t a_limit) {
    if (!s.contains_one())
        throw PreconditionError("density sum route requires 1 in S (use the zero branch)");
    if (a_limit < 1) throw PreconditionError("a_limit must be >= 1");

    detail::Kahan sum;
    std::uint64_t terms = 0;
    for (std::uint64_t a : enumerate_powerful(a_limit)) {
        Factorization f = trial_factorization(a);
        bool admissible = true;
        long double weight = 1.0L;
        for (const auto& pp : f.parts) {
            if (!s.contains(pp.exponent)) { admissible = false; break; }
            long double p = static_cast<long double>(pp.prime);
            weight *= p / (p + 1.0L);
        }
        if (!admissible) continue;
        sum.add(weight / static_cast<long double>(a));
        ++terms;
    }

    DensityResult r;
    r.value = kSixOverPiSq * sum.sum;
    if (r.value > 1.0L) r.value = 1.0L;
    // no powerful S-number other than 1 exists unless S reaches past 1,
    // in which case the truncated tail is certified by the 5/sqrt(A) bound
    if (s.has_element_geq(2)) {
        r.error_bound = kSixOverPiSq * powerful_reciprocal_tail_bound(a_limit) +
                        r.value * (static_cast<long double>(terms) * 1e-18L + 1e-18L);
    } else {
        r.error_bound = 0.0L;
    }
    r.a_limit = a_limit;
    r.route = Route::Eq8;
    return r;
}

inline DensityResult density_auto(const ExponentSet& s, std::uint64_t prime_limit,
                                  long double eps = 1e-9L) {
    if (!s.contains_one()) return density_zero_branch(s);
    return density_eq4(s, prime_limit, eps);
}

struct TailSum {
    long double value = 0.0L;
    long double tail_bound = 0.0L;
};

// A(l) = sum of 1/a over powerful S-numbers with radical exactly l.
// A(1) = 1; A(p) = sum_{i>=2} p^{-s(i)}; multiplicative in l.
inline TailSum radical_class_sum(const ExponentSet& s, std::uint64_t l, std::uint32_t depth) {
    if (l < 1) throw PreconditionError("radical_class_sum: l must be >= 1");
    if (l == 1) return {1.0L, 0.0L};
    if (depth < 2) throw PreconditionError("radical_class_sum: depth must be >= 2");
    Factorization lf = trial_factorization(l);
    if (!lf.is_squarefree())
        throw PreconditionError("radical_class_sum: l = " + std::to_string(l) +
                                " is not squarefree");

    long double value = 1.0L;
    long double upper = 1.0L;
    for (const auto& pp : lf.parts) {
        long double p = static_cast<long double>(pp.prime);
        long double single = 0.0L;
        long double tail = 0.0L;
        std::uint64_t m = 2;
        std::uint64_t last = 0;
        for (std::uint32_t i = 2; i <= depth; ++i) {
            auto elem = s.next_element(m);
            if (!elem) { last = 0; break; }
            last = *elem;
            single += std::pow(p, -static_cast<long double>(last));
            m = last + 1;
        }
        if (last != 0 && s.next_element(last + 1)) {
            // indices beyond depth contribute at most the geometric tail
            tail = std::pow(p, -static_cast<long double>(last)) / (p - 1.0L);
        }
        value *= single;
        upper *= single + tail;
    }
    return {value, (upper - value) + upper * 1e-18L};
}

// prod over n of (1 + sum_{i>=2} (u_n(i)-u_n(i-1)) p_n^{-i}) truncated at
// term_limit factors.  The reported tail uses the first index j_n at which
// u_n moves: the n-th factor differs from 1 by at most
// sum_{i>=j_n} p_n^{-i} = p_n^{1-j_n}/(p_n-1), evaluated explicitly for a
// window past term_limit and closed with a telescoped or geometric bound
// depending on the rule's tail sets.
inline DensityResult density_per_prime(const PerPrimeFamily& family, std::uint64_t term_limit) {
    if (term_limit < 1) throw PreconditionError("term_limit must be >= 1");
    if (!family.is_prefix()) {
        for (const auto& s : family.list())
            if (!s.contains_one())
                throw PreconditionError("family: every per-prime set must contain 1");
        if (!family.tail().contains_one())
            throw PreconditionError("family: the default tail set must contain 1");
    }

    const std::uint64_t window_end =
        std::max(term_limit + 64, family.is_prefix() ? 0 : family.list_size() + 64);
    const std::vector<std::uint32_t> primes = first_n_primes(window_end);
    const long double log_k =
        std::log(2.0L * static_cast<long double>(term_limit) * 1e12L);

    const bool log_space = term_limit > detail::kLogSpaceThreshold;
    long double product = 1.0L;
    detail::Kahan log_sum;
    detail::Kahan tail_log;
    std::uint32_t max_depth = 0;

    for (std::uint64_t n = 1; n <= term_limit; ++n) {
        const std::uint32_t p = primes[n - 1];
        const ExponentSet sn = family.set_for(n);
        if (!sn.contains_one())
            throw PreconditionError("family: every per-prime set must contain 1");

        std::uint32_t depth = detail::inner_depth(log_k, p);
        long double tau = 0.0L;
        auto support = sn.diff_support_end();
        if (support && *support <= std::max<std::uint64_t>(depth, 64)) {
            depth = static_cast<std::uint32_t>(*support);
        } else {
            tau = std::pow(static_cast<long double>(p), -static_cast<long double>(depth)) /
                  (static_cast<long double>(p) - 1.0L);
        }
        max_depth = std::max(max_depth, depth);

        long double t = 0.0L;
        long double power = 1.0L / (static_cast<long double>(p) * static_cast<long double>(p));
        bool prev = true;
        for (std::uint32_t i = 2; i <= depth; ++i) {
            bool cur = sn.contains(i);
            if (cur != prev) t += cur ? power : -power;
            prev = cur;
            power /= static_cast<long double>(p);
        }
        long double f = 1.0L + t;
        if (log_space)
            log_sum.add(std::log(f));
        else
            product *= f;
        if (tau > 0.0L) tail_log.add(tau / (f - tau));
    }

    // explicit window past the last included factor
    for (std::uint64_t n = term_limit + 1; n <= window_end; ++n) {
        const long double p = static_cast<long double>(primes[n - 1]);
        auto j = family.set_for(n).first_diff_index();
        if (!j) continue;
        long double b = std::pow(p, 1.0L - static_cast<long double>(*j)) / (p - 1.0L);
        tail_log.add(b / (1.0L - b));
    }

    // closing bound past the window
    const long double p_end = static_cast<long double>(primes[window_end - 1]);
    if (family.is_prefix()) {
        // j_n = n+1 and p_n >= n+1, so the remainder is below 4(M+2)^{-(M+1)}
        long double m1 = static_cast<long double>(window_end) + 1.0L;
        tail_log.add(4.0L * std::exp(-m1 * std::log(m1 + 1.0L)));
    } else {
        auto jd = family.tail().first_diff_index();
        if (jd) {
            if (*jd == 2) {
                tail_log.add(2.0L / p_end);  // telescoped over integers > p_end
            } else {
                long double jl = static_cast<long double>(*jd);
                tail_log.add(4.0L * std::pow(p_end, 1.0L - jl) / (jl - 1.0L));
            }
        }
    }

    DensityResult r;
    r.value = log_space ? std::exp(log_sum.sum) : product;
    if (r.value > 1.0L) r.value = 1.0L;
    long double slack =
        r.value * (static_cast<long double>(term_limit) * 1e-18L + 1e-17L);
    r.error_bound = r.value * std::expm1(tail_log.sum) + slack;
    r.prime_limit = primes[term_limit - 1];
    r.exponent_depth = max_depth;
    r.route = Route::Eq13;
    return r;
}

struct GapInterval {
    DensityResult upper_no2;    // sup over sets omitting 2:   prod (1 - (p-1)/p^3)
    DensityResult lower_with2;  // inf over sets containing 2: prod (1 - 1/p^3)
    bool certified = false;     // intervals separated, gap provably nonempty
};

inline GapInterval gap_interval(std::uint64_t prime_limit) {
    if (prime_limit < 2) throw PreconditionError("prime_limit must be >= 2");
    GapInterval g;
    g.lower_with2 = density_eq4(ExponentSet::finite({1, 2}), prime_limit);
    g.upper_no2 = density_eq4(ExponentSet::cofinite({2}), prime_limit);
    g.certified = g.upper_no2.value + g.upper_no2.error_bound <
                  g.lower_with2.value - g.lower_with2.error_bound;
    return g;
}

}  // namespace expos
