#pragma once

// Powerful numbers (every prime exponent >= 2), generated from the unique
// representation a^2 b^3 with b squarefree.  No sieve table involved, so
// the limits here are independent of any factorization cap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "expos/constants.hpp"
#include "expos/errors.hpp"
#include "expos/factorization.hpp"

namespace expos {

inline std::vector<std::uint64_t> enumerate_powerful(std::uint64_t limit) {
    if (limit < 1) throw PreconditionError("enumerate_powerful: limit must be >= 1");
    std::vector<std::uint64_t> vals;
    using u128 = unsigned __int128;
    for (std::uint64_t b = 1; static_cast<u128>(b) * b * b <= limit; ++b) {
        if (!trial_is_squarefree(b)) continue;
        std::uint64_t b3 = b * b * b;
        for (std::uint64_t a = 1; static_cast<u128>(a) * a * b3 <= limit; ++a)
            vals.push_back(a * a * b3);  // (a, b) canonical, so no duplicates
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

inline std::uint64_t powerful_count(std::uint64_t limit) {
    return enumerate_powerful(limit).size();
}

// two-term main term C1*sqrt(x) + C2*x^{1/3} with C1 = zeta(3/2)/zeta(3)
// and C2 = zeta(2/3)/zeta(2); C2 is negative
inline long double powerful_main_term(long double x) {
    if (x < 1.0L) throw PreconditionError("powerful_main_term: x must be >= 1");
    const long double c1 = kZeta3Half / kZeta3;
    const long double c2 = kZeta2Thirds / kZeta2;
    return c1 * std::sqrt(x) + c2 * std::cbrt(x);
}

namespace detail {

// Validate  sum_{a > A, powerful} 1/a <= kPowerfulTailConst/sqrt(A)  against
// enumeration up to 1e8 at every step of the partial-sum staircase.  The
// total sum is zeta(2)zeta(3)/zeta(6).
inline void validate_powerful_tail_constant() {
    const std::uint64_t kCheckLimit = 100000000ULL;
    std::vector<std::uint64_t> pw = enumerate_powerful(kCheckLimit);
    long double partial = 0.0L;
    for (std::size_t i = 0; i < pw.size(); ++i) {
        partial += 1.0L / static_cast<long double>(pw[i]);
        long double tail = kPowerfulReciprocalSum - partial;
        // the tail is constant on [pw[i], next), so check at the far edge
        std::uint64_t far = (i + 1 < pw.size()) ? pw[i + 1] - 1 : kCheckLimit;
        if (tail > kPowerfulTailConst / std::sqrt(static_cast<long double>(far)))
            throw std::logic_error("powerful reciprocal tail bound failed validation at A=" +
                                   std::to_string(far));
    }
}

}  // namespace detail

// certified bound on sum_{a > a_limit, a powerful} 1/a
inline long double powerful_reciprocal_tail_bound(std::uint64_t a_limit) {
    if (a_limit < 1) throw PreconditionError("tail bound: a_limit must be >= 1");
    static std::once_flag flag;
    std::call_once(flag, detail::validate_powerful_tail_constant);
    return kPowerfulTailConst / std::sqrt(static_cast<long double>(a_limit));
}

}  // namespace expos
