#include "pairdiag/mcnemar.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairdiag::mcnemar {

namespace {
void check_counts(long long b, long long c) {
    if (b < 0 || c < 0) throw std::invalid_argument("mcnemar: negative count");
    if (b + c == 0) throw DegeneracyError("mcnemar: no discordant pairs (b+c == 0)");
}
} // namespace

void DiscordantCounts::validate() const {
    if (b < 0 || c < 0) throw std::invalid_argument("DiscordantCounts: negative count");
    if (n < 1) throw std::invalid_argument("DiscordantCounts: n must be >= 1");
    if (b + c > n) throw std::invalid_argument("DiscordantCounts: b + c exceeds n");
}

double mcnemar_chi2(long long b, long long c) {
    check_counts(b, c);
    const double diff = static_cast<double>(b - c);
    return math::chi2_sf1(diff * diff / static_cast<double>(b + c));
}

double mcnemar_exact(long long b, long long c) {
    check_counts(b, c);
    const long long m = b + c, k = std::max(b, c);
    const double p = 2.0 * std::exp(math::log_binom_tail_half(m, k));
    return std::min(1.0, p);
}

double mcnemar_midp(long long b, long long c) {
    check_counts(b, c);
    const long long m = b + c, k = std::max(b, c);
    const double tail_excl = std::exp(math::log_binom_tail_half(m, k + 1));
    const double at_k = std::exp(math::log_binom_pmf_half(m, k));
    return std::min(1.0, 2.0 * (tail_excl + 0.5 * at_k));
}

double mcnemar_cc(long long b, long long c) {
    check_counts(b, c);
    const double d = std::fabs(static_cast<double>(b - c));
    if (d <= 1.0) return 1.0;
    return math::chi2_sf1((d - 1.0) * (d - 1.0) / static_cast<double>(b + c));
}

double required_n_mcnemar_real(long long b, long long c, long long n,
                               const TestConfig& cfg) {
    DiscordantCounts{b, c, n}.validate();
    if (b + c == 0) throw DegeneracyError("required_n_mcnemar: no discordant pairs");
    if (b == c) return std::numeric_limits<double>::infinity();
    cfg.validate();
    const double psi = static_cast<double>(b + c) / static_cast<double>(n);
    const double delta = static_cast<double>(b - c) / static_cast<double>(n);
    const double za = math::z_upper(cfg.alpha / 2.0);
    const double zb = math::z_upper(1.0 - cfg.power);
    const double num = za * std::sqrt(psi) + zb * std::sqrt(psi - delta * delta);
    return num * num / (delta * delta);
}

double required_n_mcnemar(long long b, long long c, long long n, const TestConfig& cfg) {
    const double r = required_n_mcnemar_real(b, c, n, cfg);
    return std::isfinite(r) ? std::ceil(r) : r;
}

} // namespace pairdiag::mcnemar
