#include "pairdiag/eprocess.hpp"

#include "pairdiag/math.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pairdiag::eprocess {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void MixtureGrid::validate() const {
    if (thetas.empty()) throw std::invalid_argument("mixture grid: empty support");
    if (thetas.size() != weights.size())
        throw std::invalid_argument("mixture grid: weight/support size mismatch");
    double wsum = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] > 0.0 && thetas[i] < 1.0) || thetas[i] == 0.5)
            throw std::invalid_argument("mixture grid: support point outside (0,1)\\{1/2}");
        if (!(weights[i] > 0.0)) throw std::invalid_argument("mixture grid: nonpositive weight");
        wsum += weights[i];
    }
    if (std::fabs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("mixture grid: weights must sum to 1");
}

MixtureGrid MixtureGrid::uniform98() {
    MixtureGrid g;
    for (int t = 1; t <= 99; ++t) {
        if (t == 50) continue;
        g.thetas.push_back(t / 100.0);
    }
    g.weights.assign(g.thetas.size(), 1.0 / static_cast<double>(g.thetas.size()));
    return g;
}

MixtureGrid MixtureGrid::two_point() {
    MixtureGrid g;
    g.thetas = {0.4, 0.6};
    g.weights = {0.5, 0.5};
    return g;
}

MixtureGrid MixtureGrid::beta22(int points) {
    if (points < 2) throw std::invalid_argument("beta22 grid: need at least two points");
    MixtureGrid g;
    for (int i = 0; i < points; ++i) {
        const double q = (i + 0.5) / points;
        const double t = math::incomplete_beta_inv(q, 2.0, 2.0);
        if (t == 0.5) continue;
        g.thetas.push_back(t);
    }
    g.weights.assign(g.thetas.size(), 1.0 / static_cast<double>(g.thetas.size()));
    return g;
}

MixtureGrid MixtureGrid::from_name(const std::string& name) {
    if (name == "uniform") return uniform98();
    if (name == "two-point") return two_point();
    if (name == "beta22") return beta22();
    throw std::invalid_argument("unknown mixture grid: " + name);
}

EProcess::EProcess(MixtureGrid grid) : grid_(std::move(grid)) {
    grid_.validate();
    const std::size_t g = grid_.thetas.size();
    log_2t_.resize(g);
    log_2q_.resize(g);
    acc_.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
        log_2t_[i] = std::log(2.0 * grid_.thetas[i]);
        log_2q_[i] = std::log(2.0 * (1.0 - grid_.thetas[i]));
        acc_[i] = std::log(grid_.weights[i]);
    }
}

void EProcess::update(Sign s) {
    const auto& step = (s == Sign::AWins) ? log_2t_ : log_2q_;
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += step[i];
    (s == Sign::AWins ? b_ : c_)++;
}

double EProcess::log_e() const {
    return math::log_sum_exp(acc_);
}

double EProcess::log_e_upper_bound() const {
    double mx = acc_[0];
    for (double v : acc_) mx = std::max(mx, v);
    return mx + std::log(static_cast<double>(acc_.size()));
}

double log_e_at(const MixtureGrid& grid, long long b, long long c) {
    grid.validate();
    std::vector<double> terms(grid.thetas.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        terms[i] = std::log(grid.weights[i]) +
                   static_cast<double>(b) * std::log(2.0 * grid.thetas[i]) +
                   static_cast<double>(c) * std::log(2.0 * (1.0 - grid.thetas[i]));
    }
    return math::log_sum_exp(terms);
}

TestResult eprocess_test(std::span<const int> signs, double alpha, const MixtureGrid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("eprocess_test: alpha must be in (0,1)");
    EProcess ep(grid);
    const double thr = std::log(1.0 / alpha);
    TestResult r;
    r.trajectory.reserve(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == 0) throw std::invalid_argument("eprocess_test: sign must be +-1");
        ep.update(signs[i] > 0 ? Sign::AWins : Sign::BWins);
        const double le = ep.log_e();
        r.trajectory.push_back(le);
        if (le >= thr) {
            r.rejected = true;
            r.stop_index = static_cast<long long>(i) + 1;
            break;
        }
    }
    return r;
}

std::string trajectory_to_csv(const TestResult& r, double alpha) {
    std::ostringstream os;
    os.precision(10);
    os << "n,log_e,threshold\n";
    const double thr = std::log(1.0 / alpha);
    for (std::size_t i = 0; i < r.trajectory.size(); ++i)
        os << (i + 1) << ',' << r.trajectory[i] << ',' << thr << '\n';
    return os.str();
}

namespace {

// One latent-Gaussian trial: stream the discordant signs through the
// e-process, returning the 1-based item index of the first crossing or -1.
long long run_trial(double p_a, double p_b, double rho_z, long long n_max, double thr,
                    const std::vector<double>& log_2t, const std::vector<double>& log_2q,
                    std::vector<double>& acc, const std::vector<double>& log_w, Rng& rng) {
    acc = log_w;
    const double ta = math::normal_quantile(p_a);
    const double tb = math::normal_quantile(p_b);
    const double sq = std::sqrt(1.0 - rho_z * rho_z);
    const double logG = std::log(static_cast<double>(acc.size()));
    for (long long i = 1; i <= n_max; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const bool xa = z1 <= ta;
        const bool xb = rho_z * z1 + sq * z2 <= tb;
        if (xa == xb) continue;
        const auto& step = xa ? log_2t : log_2q;
        double mx = -kInf;
        for (std::size_t g = 0; g < acc.size(); ++g) {
            acc[g] += step[g];
            mx = std::max(mx, acc[g]);
        }
        if (mx + logG < thr) continue; // cannot cross; skip the exp pass
        if (math::log_sum_exp(acc) >= thr) return i;
    }
    return -1;
}

} // namespace

Calibration calibrate_eprocess(double p, double rho_z, double delta, long long n_max,
                               int trials, std::uint64_t seed, const MixtureGrid& grid,
                               const TestConfig& cfg) {
    cfg.validate();
    grid.validate();
    if (trials < 1) throw std::invalid_argument("calibrate_eprocess: trials must be >= 1");
    const double pa = p + delta / 2.0, pb = p - delta / 2.0;
    if (!(pa > 0.0 && pa < 1.0 && pb > 0.0 && pb < 1.0))
        throw std::invalid_argument("calibrate_eprocess: p +- delta/2 must be interior");
    if (!(rho_z > -1.0 && rho_z < 1.0))
        throw std::invalid_argument("calibrate_eprocess: rho_z must be in (-1,1)");

    const std::size_t g = grid.thetas.size();
    std::vector<double> log_2t(g), log_2q(g), log_w(g), acc;
    for (std::size_t i = 0; i < g; ++i) {
        log_2t[i] = std::log(2.0 * grid.thetas[i]);
        log_2q[i] = std::log(2.0 * (1.0 - grid.thetas[i]));
        log_w[i] = std::log(grid.weights[i]);
    }
    const double thr = std::log(1.0 / cfg.alpha);

    Calibration out;
    // Null arm: delta = 0.
    long long null_rejects = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_rng(seed, {0x65700030ULL, static_cast<std::uint64_t>(t)});
        null_rejects += run_trial(p, p, rho_z, n_max, thr, log_2t, log_2q, acc, log_w, rng) > 0;
    }
    out.type1 = static_cast<double>(null_rejects) / trials;
    out.type1_mcse = std::sqrt(std::max(out.type1 * (1.0 - out.type1), 1e-12) / trials);

    // H1 arm at delta; the ratio divisor takes rho_z as the Eq.-5 correlation.
    const double sigma = std::sqrt(paired::bernoulli_diff_variance(pa, pb, rho_z));
    out.n_star_ref = paired::required_n_real(delta, sigma, cfg);
    long long rejects = 0;
    double sum_stop = 0.0, sum_stop2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_rng(seed, {0x65700031ULL, static_cast<std::uint64_t>(t)});
        const long long s = run_trial(pa, pb, rho_z, n_max, thr, log_2t, log_2q, acc, log_w, rng);
        if (s > 0) {
            ++rejects;
            sum_stop += static_cast<double>(s);
            sum_stop2 += static_cast<double>(s) * static_cast<double>(s);
        }
    }
    out.reject_rate = static_cast<double>(rejects) / trials;
    if (rejects > 0) {
        out.mean_stop = sum_stop / rejects;
        out.mean_stop_ratio = out.mean_stop / out.n_star_ref;
        if (rejects > 1) {
            const double var =
                (sum_stop2 - sum_stop * sum_stop / rejects) / (rejects - 1);
            out.stop_ratio_mcse = std::sqrt(std::max(var, 0.0) / rejects) / out.n_star_ref;
        }
    }
    return out;
}

namespace {

// Minimal k = |b-c| (parity of m) with log e(b,c) >= thr, or -1.
long long min_crossing_imbalance(const MixtureGrid& grid, long long m, double thr) {
    const long long k0 = m % 2;
    auto le = [&](long long k) {
        return log_e_at(grid, (m + k) / 2, (m - k) / 2);
    };
    if (le(m) < thr) return -1;
    long long lo = k0, hi = m; // le(hi) >= thr
    if (le(lo) >= thr) return lo;
    while (hi - lo > 2) {
        long long mid = lo + (hi - lo) / 2;
        if ((mid - k0) % 2 != 0) ++mid;
        if (mid >= hi) mid = hi - 2;
        if (le(mid) >= thr)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

double threshold_inflation_at(long long n, double alpha, const MixtureGrid& grid,
                              std::optional<double> psi, const TestConfig& cfg) {
    if (n < 1) throw std::invalid_argument("threshold_inflation_at: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("threshold_inflation_at: alpha must be in (0,1)");
    cfg.validate();
    const double thr = std::log(1.0 / alpha);
    const double zb = math::z_upper(1.0 - cfg.power);
    const double zsum = math::z_upper(alpha / 2.0) + zb;

    auto factor_at = [&](double rate) {
        const long long m = std::max<long long>(1, std::llround(rate * static_cast<double>(n)));
        const long long k = min_crossing_imbalance(grid, m, thr);
        if (k < 0) return kInf;
        const double z_eq = static_cast<double>(k) / std::sqrt(static_cast<double>(m));
        const double f = (z_eq + zb) / zsum;
        return f * f;
    };

    if (psi) {
        if (!(*psi > 0.0 && *psi <= 1.0))
            throw std::invalid_argument("threshold_inflation_at: psi must be in (0,1]");
        return factor_at(*psi);
    }
    // Representative close-pair discordance rates; median factor.
    double f[3] = {factor_at(0.005), factor_at(0.01), factor_at(0.02)};
    std::sort(std::begin(f), std::end(f));
    return f[1];
}

} // namespace pairdiag::eprocess
