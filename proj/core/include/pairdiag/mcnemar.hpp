#pragma once

#include "pairdiag/types.hpp"

// =============================================================================
// McNemar-family tests on discordant counts (b, c) and the discordance-form
// required-N. Two-sided exact convention is twice-the-larger-tail, capped at
// one. Binomial tails are exact log-space summations at every size; there is
// no silent switch to a normal approximation.
// =============================================================================

namespace pairdiag::mcnemar {

struct DiscordantCounts {
    long long b = 0; // A-correct / B-wrong
    long long c = 0; // A-wrong / B-correct
    long long n = 0; // total paired items

    void validate() const; // throws std::invalid_argument
};

// Asymptotic chi^2_1 test on (b-c)^2/(b+c). Throws DegeneracyError when b+c == 0.
double mcnemar_chi2(long long b, long long c);

// Exact conditional binomial: min(1, 2 P(Bin(b+c, 1/2) >= max(b,c))).
double mcnemar_exact(long long b, long long c);

// Mid-p variant: half weight on the observed extreme cell.
double mcnemar_midp(long long b, long long c);

// Continuity-corrected chi^2_1 on (|b-c|-1)^2/(b+c), statistic clamped at 0
// when |b-c| <= 1.
double mcnemar_cc(long long b, long long c);

// Connor's discordance-form required paired count, un-ceiled:
//   [z_{1-a/2} sqrt(psi) + z_{1-b} sqrt(psi - delta^2)]^2 / delta^2
// with psi = (b+c)/n, delta = (b-c)/n. Returns +inf when b == c.
double required_n_mcnemar_real(long long b, long long c, long long n,
                               const TestConfig& cfg = {});

// Ceiled version (+inf sentinel preserved).
double required_n_mcnemar(long long b, long long c, long long n,
                          const TestConfig& cfg = {});

} // namespace pairdiag::mcnemar
