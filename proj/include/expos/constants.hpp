#pragma once

// Embedded numeric constants and the explicit remainder-bound constants
// (k, c, N) used by the squarefree-coprime count audit.
//
// The zeta values are frozen from an independent high-precision evaluation
// (Euler-Maclaurin summation, 30 digits); zeta(2/3) is genuinely negative.
// k and c are recomputed from their defining formulas at startup and
// cross-checked against the frozen digit windows before first use.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "expos/errors.hpp"

namespace expos {

inline constexpr long double kZeta3Half     = 2.61237534868548834334856756792L;   // zeta(3/2)
inline constexpr long double kZeta3         = 1.20205690315959428539973816151L;   // zeta(3)
inline constexpr long double kZeta2Thirds   = -2.44758073623365823109099570422L;  // zeta(2/3), negative
inline constexpr long double kZeta2         = 1.64493406684822643647241516665L;   // zeta(2) = pi^2/6
inline constexpr long double kZeta6         = 1.01734306198444913971451792979L;   // zeta(6)
inline constexpr long double kSixOverPiSq   = 0.607927101854026628663276779258L;  // 6/pi^2 = 1/zeta(2)

// Sum of 1/a over all powerful numbers a = zeta(2)*zeta(3)/zeta(6).
inline constexpr long double kPowerfulReciprocalSum = 1.94359643682075920505707036257L;

// Certified upper-bound constant for the powerful reciprocal tail:
//   sum_{a > A, a powerful} 1/a  <=  kPowerfulTailConst / sqrt(A).
// Validated against enumeration up to 1e8 on first use (see powerful.hpp).
inline constexpr long double kPowerfulTailConst = 5.0L;

// Empirical envelope constant for |powerful count - two-term main term|,
// reported as |residual| <= kPowerfulEnvelopeConst * x^{1/6}.  Heuristic:
// the underlying remainder has no published explicit constant.
inline constexpr long double kPowerfulEnvelopeConst = 10.0L;

inline constexpr std::uint64_t kDefaultSieveCap = 100000000ULL;  // 1e8

inline constexpr const char* kToolVersion = "1.0.0";

// Explicit constants of the squarefree-coprime remainder bound:
//   |b_r(x) - main| <= k*sqrt(x)            for r <= N   (k1 when r = 1)
//   |b_r(x) - main| <= k*e^{c*sqrt(ln r)/ln ln r}*sqrt(x)  for r > N
struct LemmaConstants {
    long double k;        // 3.5 * prod_{2<=p<=23} (1 + 1/sqrt(p)) = 57.682607...
    long double c;        // 4 * sqrt(2.4/ln 2) = 7.443083...
    long double k1;       // 3.5, the r = 1 case
    std::uint64_t big_n;  // 6469693229
};

namespace detail {

inline LemmaConstants compute_lemma_constants() {
    LemmaConstants lc;
    lc.k = 3.5L;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23})
        lc.k *= 1.0L + 1.0L / std::sqrt(static_cast<long double>(p));
    lc.c = 4.0L * std::sqrt(2.4L / std::log(2.0L));
    lc.k1 = 3.5L;
    lc.big_n = 6469693229ULL;
    // must reproduce the frozen digit windows
    if (!(lc.k >= 57.6826L && lc.k <= 57.6827L))
        throw std::logic_error("lemma constant k failed digit check");
    if (!(lc.c >= 7.443083L && lc.c <= 7.443084L))
        throw std::logic_error("lemma constant c failed digit check");
    return lc;
}

}  // namespace detail

inline const LemmaConstants& lemma_constants() {
    static const LemmaConstants lc = detail::compute_lemma_constants();
    return lc;
}

// FNV-1a over the decimal renderings of every embedded constant.  Two builds
// with the same fingerprint produce bit-identical numeric output.
inline std::uint64_t constants_fingerprint() {
    const LemmaConstants& lc = lemma_constants();
    char buf[512];
    int n = std::snprintf(buf, sizeof buf,
                          "%.21Lg|%.21Lg|%.21Lg|%.21Lg|%.21Lg|%.21Lg|%.21Lg|%.21Lg|%.21Lg|"
                          "%.21Lg|%.21Lg|%llu",
                          kZeta3Half, kZeta3, kZeta2Thirds, kZeta2, kZeta6, kSixOverPiSq,
                          kPowerfulReciprocalSum, kPowerfulTailConst, kPowerfulEnvelopeConst,
                          lc.k, lc.c, static_cast<unsigned long long>(lc.big_n));
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(buf[i]);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace expos
