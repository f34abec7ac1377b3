#include "pairdiag/paired.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairdiag::paired {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_binary_value(double v) { return v == 0.0 || v == 1.0; }
} // namespace

PairedSummary summarize_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ValidationError("summarize_pair: length mismatch");
    if (a.size() < 2)
        throw ValidationError("summarize_pair: need at least two paired items");
    const long long n = static_cast<long long>(a.size());
    bool binary = true;
    double sa = 0.0, sb = 0.0;
    for (long long i = 0; i < n; ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
            throw ValidationError("summarize_pair: non-finite value");
        binary = binary && is_binary_value(a[i]) && is_binary_value(b[i]);
        sa += a[i];
        sb += b[i];
    }

    PairedSummary s;
    s.n = n;
    s.binary = binary;
    s.p_a = sa / n;
    s.p_b = sb / n;

    double sum_d = 0.0, sum_d2 = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        sum_d += d;
        sum_d2 += d * d;
    }
    s.delta_hat = sum_d / n;
    const double var_d = std::max(0.0, sum_d2 / n - s.delta_hat * s.delta_hat);
    s.sigma_d_hat = std::sqrt(var_d);

    if (binary) {
        long long n11 = 0, n10 = 0, n01 = 0;
        for (long long i = 0; i < n; ++i) {
            const bool xa = a[i] == 1.0, xb = b[i] == 1.0;
            n11 += xa && xb;
            n10 += xa && !xb;
            n01 += !xa && xb;
        }
        s.n11 = n11;
        s.n10 = n10;
        s.n01 = n01;
        s.n00 = n - n11 - n10 - n01;
        // phi coefficient; 0 when either margin is constant
        const double r1 = static_cast<double>(n11 + n10), r0 = static_cast<double>(s.n01 + s.n00);
        const double c1 = static_cast<double>(n11 + n01), c0 = static_cast<double>(s.n10 + s.n00);
        const double denom = r1 * r0 * c1 * c0;
        s.rho_hat = denom > 0.0
                        ? (static_cast<double>(n11) * s.n00 - static_cast<double>(n10) * n01) /
                              std::sqrt(denom)
                        : 0.0;
    } else {
        double va = 0.0, vb = 0.0, cov = 0.0;
        for (long long i = 0; i < n; ++i) {
            const double da = a[i] - s.p_a, db = b[i] - s.p_b;
            va += da * da;
            vb += db * db;
            cov += da * db;
        }
        s.rho_hat = (va > 0.0 && vb > 0.0) ? cov / std::sqrt(va * vb) : 0.0;
    }
    s.rho_hat = std::clamp(s.rho_hat, -1.0, 1.0);
    return s;
}

double bernoulli_diff_variance(double p_a, double p_b, double rho) {
    if (!(p_a > 0.0 && p_a < 1.0 && p_b > 0.0 && p_b < 1.0))
        throw std::invalid_argument("bernoulli_diff_variance: marginals must be interior");
    const auto [lo, hi] = admissible_rho_bounds(p_a, p_b);
    if (rho < lo - 1e-12 || rho > hi + 1e-12)
        throw std::invalid_argument("bernoulli_diff_variance: rho outside admissible interval");
    const double va = p_a * (1.0 - p_a), vb = p_b * (1.0 - p_b);
    return std::max(0.0, va + vb - 2.0 * rho * std::sqrt(va * vb));
}

std::pair<double, double> admissible_rho_bounds(double p_a, double p_b) {
    if (!(p_a > 0.0 && p_a < 1.0 && p_b > 0.0 && p_b < 1.0))
        throw std::invalid_argument("admissible_rho_bounds: marginals must be interior");
    const double qa = 1.0 - p_a, qb = 1.0 - p_b;
    const double hi = std::sqrt(std::min(p_a * qb, qa * p_b) / std::max(p_a * qb, qa * p_b));
    const double lo = -std::sqrt(std::min(p_a * p_b, qa * qb) / std::max(p_a * p_b, qa * qb));
    return {lo, hi};
}

double wald_statistic(const PairedSummary& s) {
    if (!(s.sigma_d_hat > 0.0))
        throw DegeneracyError("wald_statistic: zero paired variance (all D_i equal)");
    return s.delta_hat * std::sqrt(static_cast<double>(s.n)) / s.sigma_d_hat;
}

double power_at(double delta, double sigma_d, double n, double alpha) {
    if (!(sigma_d > 0.0)) throw std::invalid_argument("power_at: sigma_d must be > 0");
    if (!(n >= 1.0)) throw std::invalid_argument("power_at: n must be >= 1");
    const double z = math::z_upper(alpha / 2.0);
    const double mu = std::fabs(delta) * std::sqrt(n) / sigma_d;
    return math::normal_cdf(-z - mu) + 1.0 - math::normal_cdf(z - mu);
}

double alpha_for_inversion(const TestConfig& cfg) {
    cfg.validate();
    const int m = cfg.family_size;
    switch (cfg.multiplicity) {
        case Multiplicity::None:
        case Multiplicity::BH: return cfg.alpha;
        case Multiplicity::Bonferroni:
        case Multiplicity::Holm: return cfg.alpha / m; // holm is bounded by bonferroni
        case Multiplicity::Sidak: return 1.0 - std::pow(1.0 - cfg.alpha, 1.0 / m);
    }
    return cfg.alpha;
}

double required_n_real(double delta, double sigma_d, const TestConfig& cfg) {
    if (!(sigma_d > 0.0)) throw std::invalid_argument("required_n: sigma_d must be > 0");
    if (delta == 0.0) return kInf;
    const double a = alpha_for_inversion(cfg);
    const double zsum = math::z_upper(a / 2.0) + math::z_upper(1.0 - cfg.power);
    const double r = zsum * sigma_d / std::fabs(delta);
    return r * r;
}

double required_n(double delta, double sigma_d, const TestConfig& cfg) {
    const double r = required_n_real(delta, sigma_d, cfg);
    return std::isfinite(r) ? std::ceil(r) : r;
}

double mde(double n, double sigma_d, const TestConfig& cfg) {
    if (!(n >= 1.0)) throw std::invalid_argument("mde: n must be >= 1");
    if (!(sigma_d > 0.0)) throw std::invalid_argument("mde: sigma_d must be > 0");
    const double a = alpha_for_inversion(cfg);
    const double zsum = math::z_upper(a / 2.0) + math::z_upper(1.0 - cfg.power);
    return zsum * sigma_d / std::sqrt(n);
}

double resolution_ratio(double n, double n_star_real) {
    if (!(n >= 1.0)) throw std::invalid_argument("resolution_ratio: n must be >= 1");
    if (!std::isfinite(n_star_real)) return 0.0;
    return n / n_star_real;
}

ResolutionResult resolve(const PairedSummary& s, const TestConfig& cfg) {
    ResolutionResult r;
    const double n = static_cast<double>(s.n);
    if (!(s.sigma_d_hat > 0.0)) {
        r.n_star = kInf;
        r.n_star_real = kInf;
        r.mde = 0.0;
        r.q = 0.0;
        r.t_stat = std::numeric_limits<double>::quiet_NaN();
        r.degenerate = true;
        return r;
    }
    r.t_stat = wald_statistic(s);
    r.n_star_real = required_n_real(s.delta_hat, s.sigma_d_hat, cfg);
    r.n_star = std::isfinite(r.n_star_real) ? std::ceil(r.n_star_real) : r.n_star_real;
    r.mde = mde(n, s.sigma_d_hat, cfg);
    r.q = resolution_ratio(n, r.n_star_real);
    r.resolved = r.q >= 1.0;
    r.degenerate = s.delta_hat == 0.0;
    return r;
}

double unpaired_required_n(double p_a, double p_b, const TestConfig& cfg) {
    if (!(p_a > 0.0 && p_a < 1.0 && p_b > 0.0 && p_b < 1.0))
        throw std::invalid_argument("unpaired_required_n: marginals must be interior");
    const double var = p_a * (1.0 - p_a) + p_b * (1.0 - p_b);
    return required_n_real(p_a - p_b, std::sqrt(var), cfg);
}

double efficiency_ratio(double p_a, double p_b, double rho, const TestConfig& cfg) {
    cfg.validate();
    // The (z-sum/delta)^2 factor cancels, so the ratio is the variance
    // quotient and stays finite at equal marginals (-> 1/(1-rho)).
    const double var_unp = p_a * (1.0 - p_a) + p_b * (1.0 - p_b);
    return var_unp / bernoulli_diff_variance(p_a, p_b, rho);
}

} // namespace pairdiag::paired
