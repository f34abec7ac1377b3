#include "pairdiag/simulate.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"
#include "pairdiag/mcnemar.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pairdiag::sim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Type-7 (linear interpolation) quantile of a sorted vector.
double quantile_sorted(const std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}
} // namespace

void GeneratorSpec::validate() const {
    if (!(p + delta / 2.0 > 0.0 && p + delta / 2.0 < 1.0 && p - delta / 2.0 > 0.0 &&
          p - delta / 2.0 < 1.0))
        throw std::invalid_argument("GeneratorSpec: p +- delta/2 must lie in (0,1)");
    if (!(rho_z >= -1.0 && rho_z <= 1.0))
        throw std::invalid_argument("GeneratorSpec: rho_z must lie in [-1,1]");
    if (n < 1) throw std::invalid_argument("GeneratorSpec: n must be >= 1");
}

ScorePair gen_paired_bernoulli(const GeneratorSpec& spec) {
    spec.validate();
    const double ta = math::normal_quantile(spec.p + spec.delta / 2.0);
    const double tb = math::normal_quantile(spec.p - spec.delta / 2.0);
    const double sq = std::sqrt(std::max(0.0, 1.0 - spec.rho_z * spec.rho_z));
    Rng rng = derive_rng(spec.seed, {0x67656e62ULL});
    ScorePair out;
    out.first.resize(spec.n);
    out.second.resize(spec.n);
    for (long long i = 0; i < spec.n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        out.first[i] = z1 <= ta ? 1.0 : 0.0;
        out.second[i] = spec.rho_z * z1 + sq * z2 <= tb ? 1.0 : 0.0;
    }
    return out;
}

ScorePair gen_paired_graded(double alpha_shape, double beta_shape, double rho_z,
                            double delta_shift, long long n, std::uint64_t seed) {
    if (!(alpha_shape > 0.0 && beta_shape > 0.0))
        throw std::invalid_argument("gen_paired_graded: shapes must be positive");
    if (!(rho_z >= -1.0 && rho_z <= 1.0))
        throw std::invalid_argument("gen_paired_graded: rho_z must lie in [-1,1]");
    if (n < 1) throw std::invalid_argument("gen_paired_graded: n must be >= 1");
    const double sq = std::sqrt(std::max(0.0, 1.0 - rho_z * rho_z));
    Rng rng = derive_rng(seed, {0x67656e67ULL});
    ScorePair out;
    out.first.resize(n);
    out.second.resize(n);
    for (long long i = 0; i < n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double ua = math::normal_cdf(z1);
        const double ub = math::normal_cdf(rho_z * z1 + sq * z2);
        const double xa = math::incomplete_beta_inv(ua, alpha_shape, beta_shape);
        const double xb = math::incomplete_beta_inv(ub, alpha_shape, beta_shape);
        out.first[i] = std::clamp(xa + delta_shift, 0.0, 1.0);
        out.second[i] = xb;
    }
    return out;
}

ScorePair scores_from_counts(long long n11, long long n10, long long n01, long long n00) {
    if (n11 < 0 || n10 < 0 || n01 < 0 || n00 < 0)
        throw std::invalid_argument("scores_from_counts: negative cell");
    const long long n = n11 + n10 + n01 + n00;
    if (n < 2) throw std::invalid_argument("scores_from_counts: need at least two items");
    ScorePair out;
    out.first.reserve(n);
    out.second.reserve(n);
    auto push = [&](double a, double b, long long count) {
        for (long long i = 0; i < count; ++i) {
            out.first.push_back(a);
            out.second.push_back(b);
        }
    };
    push(1.0, 1.0, n11);
    push(1.0, 0.0, n10);
    push(0.0, 1.0, n01);
    push(0.0, 0.0, n00);
    return out;
}

double bernoulli_rho_from_latent(double rho_z, double p_a, double p_b) {
    if (!(p_a > 0.0 && p_a < 1.0 && p_b > 0.0 && p_b < 1.0))
        throw std::invalid_argument("bernoulli_rho_from_latent: interior marginals required");
    const double p11 = math::bivariate_normal_cdf(math::normal_quantile(p_a),
                                                  math::normal_quantile(p_b), rho_z);
    const double va = p_a * (1.0 - p_a), vb = p_b * (1.0 - p_b);
    return (p11 - p_a * p_b) / std::sqrt(va * vb);
}

double latent_rho_for_bernoulli(double rho, double p_a, double p_b) {
    double lo = -0.999999, hi = 0.999999;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bernoulli_rho_from_latent(mid, p_a, p_b) < rho)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

BootstrapTestResult paired_bootstrap_test(std::span<const double> a,
                                          std::span<const double> b, double alpha,
                                          int b_reps, std::uint64_t seed) {
    if (a.size() != b.size() || a.size() < 2)
        throw ValidationError("paired_bootstrap_test: need matched sequences of length >= 2");
    if (b_reps < 100)
        throw std::invalid_argument("paired_bootstrap_test: b_reps must be >= 100");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("paired_bootstrap_test: alpha must be in (0,1)");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];

    Rng rng = derive_rng(seed, {0x62747374ULL});
    std::vector<double> means(b_reps);
    for (int r = 0; r < b_reps; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += d[rng.uniform_index(n)];
        means[r] = s / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());
    BootstrapTestResult res;
    res.ci_lo = quantile_sorted(means, alpha / 2.0);
    res.ci_hi = quantile_sorted(means, 1.0 - alpha / 2.0);
    res.reject = !(res.ci_lo <= 0.0 && 0.0 <= res.ci_hi);
    const auto below =
        std::lower_bound(means.begin(), means.end(), 0.0) - means.begin();
    const auto above = means.end() - std::upper_bound(means.begin(), means.end(), 0.0);
    // 2 min(P(mean <= 0), P(mean >= 0)) with ties at zero counted both ways.
    const double f_lt = static_cast<double>(below) / b_reps;
    const double f_gt = static_cast<double>(above) / b_reps;
    res.p_value = std::min(1.0, 2.0 * std::min(1.0 - f_gt, 1.0 - f_lt));
    return res;
}

std::pair<double, double> bootstrap_nstar_ci(std::span<const double> a,
                                             std::span<const double> b, int b_reps,
                                             const TestConfig& cfg, std::uint64_t seed) {
    if (a.size() != b.size() || a.size() < 2)
        throw ValidationError("bootstrap_nstar_ci: need matched sequences of length >= 2");
    if (b_reps < 100)
        throw std::invalid_argument("bootstrap_nstar_ci: b_reps must be >= 100");
    cfg.validate();
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];

    Rng rng = derive_rng(seed, {0x6e737463ULL});
    std::vector<double> nstars(b_reps);
    for (int r = 0; r < b_reps; ++r) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = d[rng.uniform_index(n)];
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / static_cast<double>(n);
        const double var = std::max(0.0, sum2 / static_cast<double>(n) - mean * mean);
        nstars[r] = (mean != 0.0 && var > 0.0)
                        ? paired::required_n_real(mean, std::sqrt(var), cfg)
                        : kInf;
    }
    std::sort(nstars.begin(), nstars.end());
    const auto idx = [&](double q) {
        return std::min<std::size_t>(
            nstars.size() - 1,
            static_cast<std::size_t>(std::llround(q * static_cast<double>(nstars.size() - 1))));
    };
    return {nstars[idx(0.05)], nstars[idx(0.95)]};
}

double bootstrap_power(std::span<const double> a, std::span<const double> b,
                       long long n_target, double alpha, int trials, std::uint64_t seed) {
    if (a.size() != b.size() || a.empty())
        throw ValidationError("bootstrap_power: need matched nonempty sequences");
    if (n_target < 1) throw std::invalid_argument("bootstrap_power: n_target must be >= 1");
    if (trials < 100) throw std::invalid_argument("bootstrap_power: trials must be >= 100");
    const std::size_t n = a.size();
    // Signs only: the chi^2 statistic depends on (b, c) of the subsample.
    std::vector<signed char> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = static_cast<signed char>((a[i] > b[i]) - (a[i] < b[i]));

    long long rejects = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_rng(seed, {0x62706f77ULL, static_cast<std::uint64_t>(t)});
        long long bc = 0, cc = 0;
        for (long long i = 0; i < n_target; ++i) {
            const signed char v = d[rng.uniform_index(n)];
            bc += v > 0;
            cc += v < 0;
        }
        if (bc + cc == 0) continue;
        rejects += mcnemar::mcnemar_chi2(bc, cc) < alpha;
    }
    return static_cast<double>(rejects) / trials;
}

namespace {

// Bisection for the smallest positive delta with power(delta) = target.
// `variance(delta)` returns the difference variance, or a negative value when
// the candidate delta is inadmissible (rho outside the Hoeffding interval).
template <typename VarFn>
double tune_delta_impl(double p, double n, double target, const TestConfig& cfg,
                       VarFn&& variance) {
    if (!(target > cfg.alpha && target < 1.0))
        throw std::invalid_argument("tune_delta_for_power: target must lie in (alpha, 1)");
    const double a = paired::alpha_for_inversion(cfg);
    auto power_of = [&](double delta) {
        const double var = variance(delta);
        if (var < 0.0) return -1.0; // inadmissible
        if (var == 0.0) return 1.0; // degenerate: saturated power
        return paired::power_at(delta, std::sqrt(var), n, a);
    };
    double hi = std::min(2.0 * p, 2.0 * (1.0 - p)) - 1e-9;
    while (hi > 1e-10 && power_of(hi) < 0.0) hi *= 0.95;
    if (hi <= 1e-10 || power_of(hi) < target)
        throw DegeneracyError("tune_delta_for_power: no admissible delta reaches target");
    double lo = 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (power_of(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double tune_delta_for_power(double p, double rho, double n, double target,
                            const TestConfig& cfg) {
    cfg.validate();
    return tune_delta_impl(p, n, target, cfg, [&](double delta) {
        const double pa = p + delta / 2.0, pb = p - delta / 2.0;
        const auto [lo, hi] = paired::admissible_rho_bounds(pa, pb);
        if (rho < lo || rho > hi) return -1.0;
        return paired::bernoulli_diff_variance(pa, pb, rho);
    });
}

double tune_delta_for_power_latent(double p, double rho_z, double n, double target,
                                   const TestConfig& cfg) {
    cfg.validate();
    return tune_delta_impl(p, n, target, cfg, [&](double delta) {
        const double pa = p + delta / 2.0, pb = p - delta / 2.0;
        const double p11 = math::bivariate_normal_cdf(math::normal_quantile(pa),
                                                      math::normal_quantile(pb), rho_z);
        const double psi = pa + pb - 2.0 * p11;
        return psi - delta * delta;
    });
}

namespace {

struct TrialCounts {
    long long b = 0, c = 0;
    long long n_pos = 0, n_neg = 0; // discordant counts, same thing by construction
};

// One copula draw reduced to discordant counts.
TrialCounts draw_counts(double pa, double pb, double rho_z, long long n, Rng& rng) {
    const double ta = math::normal_quantile(pa);
    const double tb = math::normal_quantile(pb);
    const double sq = std::sqrt(std::max(0.0, 1.0 - rho_z * rho_z));
    TrialCounts t;
    for (long long i = 0; i < n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const bool xa = z1 <= ta;
        const bool xb = rho_z * z1 + sq * z2 <= tb;
        t.b += xa && !xb;
        t.c += !xa && xb;
    }
    t.n_pos = t.b;
    t.n_neg = t.c;
    return t;
}

// Percentile-bootstrap rejection from discordant counts alone: D is +1 with
// count b, -1 with count c, 0 otherwise, so a resampled mean only needs the
// two resampled counts.
bool bootstrap_reject_from_counts(const TrialCounts& t, long long n, double alpha,
                                  int b_reps, Rng& rng) {
    const double n_d = static_cast<double>(n);
    std::vector<double> means(b_reps);
    const auto npos = static_cast<std::uint64_t>(t.n_pos);
    const auto nneg = static_cast<std::uint64_t>(t.n_neg);
    for (int r = 0; r < b_reps; ++r) {
        long long bp = 0, bn = 0;
        for (long long i = 0; i < n; ++i) {
            const std::uint64_t u = rng.uniform_index(static_cast<std::uint64_t>(n));
            bp += u < npos;
            bn += u >= npos && u < npos + nneg;
        }
        means[r] = static_cast<double>(bp - bn) / n_d;
    }
    std::sort(means.begin(), means.end());
    const double lo = quantile_sorted(means, alpha / 2.0);
    const double hi = quantile_sorted(means, 1.0 - alpha / 2.0);
    return !(lo <= 0.0 && 0.0 <= hi);
}

constexpr const char* kVariantNames[5] = {"chi2", "exact", "midp", "cc", "bootstrap"};

std::array<bool, 5> variant_rejections(const TrialCounts& t, long long n, double alpha,
                                       int boot_reps, Rng& rng) {
    std::array<bool, 5> rej{};
    if (t.b + t.c > 0) {
        rej[0] = mcnemar::mcnemar_chi2(t.b, t.c) < alpha;
        rej[1] = mcnemar::mcnemar_exact(t.b, t.c) < alpha;
        rej[2] = mcnemar::mcnemar_midp(t.b, t.c) < alpha;
        rej[3] = mcnemar::mcnemar_cc(t.b, t.c) < alpha;
    }
    rej[4] = bootstrap_reject_from_counts(t, n, alpha, boot_reps, rng);
    return rej;
}

} // namespace

std::vector<CalibrationCell> calibration_grid(std::span<const double> p_set,
                                              std::span<const double> rho_z_set,
                                              long long n, int trials, std::uint64_t seed,
                                              const TestConfig& cfg, int boot_reps) {
    cfg.validate();
    if (n < 2) throw std::invalid_argument("calibration_grid: n must be >= 2");
    if (trials < 100) throw std::invalid_argument("calibration_grid: trials must be >= 100");
    std::vector<CalibrationCell> out;
    std::uint64_t cell_id = 0;
    for (double p : p_set) {
        for (double rz : rho_z_set) {
            const double tuned = tune_delta_for_power_latent(p, rz, static_cast<double>(n),
                                                             cfg.power, cfg);
            long long rej0[5] = {0, 0, 0, 0, 0};
            long long rej1[5] = {0, 0, 0, 0, 0};
            for (int t = 0; t < trials; ++t) {
                Rng rng0 = derive_rng(seed, {0x63616c30ULL, cell_id,
                                             static_cast<std::uint64_t>(t)});
                const auto t0 = draw_counts(p, p, rz, n, rng0);
                const auto r0 = variant_rejections(t0, n, cfg.alpha, boot_reps, rng0);
                Rng rng1 = derive_rng(seed, {0x63616c31ULL, cell_id,
                                             static_cast<std::uint64_t>(t)});
                const auto t1 =
                    draw_counts(p + tuned / 2.0, p - tuned / 2.0, rz, n, rng1);
                const auto r1 = variant_rejections(t1, n, cfg.alpha, boot_reps, rng1);
                for (int v = 0; v < 5; ++v) {
                    rej0[v] += r0[v];
                    rej1[v] += r1[v];
                }
            }
            for (int v = 0; v < 5; ++v) {
                CalibrationCell cell;
                cell.variant = kVariantNames[v];
                cell.p = p;
                cell.rho_z = rz;
                cell.n = n;
                cell.tuned_delta = tuned;
                cell.type1 = static_cast<double>(rej0[v]) / trials;
                cell.power = static_cast<double>(rej1[v]) / trials;
                cell.type1_mcse =
                    std::sqrt(std::max(cell.type1 * (1.0 - cell.type1), 1e-12) / trials);
                cell.power_mcse =
                    std::sqrt(std::max(cell.power * (1.0 - cell.power), 1e-12) / trials);
                out.push_back(std::move(cell));
            }
            ++cell_id;
        }
    }
    return out;
}

std::string calibration_to_csv(const std::vector<CalibrationCell>& cells) {
    std::ostringstream os;
    os.precision(10);
    os << "variant,p,rho_z,n,type1,power,type1_mcse,power_mcse,tuned_delta\n";
    for (const auto& c : cells) {
        os << c.variant << ',' << c.p << ',' << c.rho_z << ',' << c.n << ',' << c.type1
           << ',' << c.power << ',' << c.type1_mcse << ',' << c.power_mcse << ','
           << c.tuned_delta << '\n';
    }
    return os.str();
}

} // namespace pairdiag::sim
