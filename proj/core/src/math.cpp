#include "pairdiag/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairdiag::math {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura (1988), algorithm AS241, PPND16.
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                  3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
                4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
                2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
                5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double z_upper(double a) {
    return normal_quantile(1.0 - a);
}

double chi2_sf1(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(0.5 * x));
}

double log_sum_exp(std::span<const double> v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : v) mx = std::max(mx, t);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double t : v) s += std::exp(t - mx);
    return mx + std::log(s);
}

double log_binom_pmf_half(long long m, long long k) {
    if (k < 0 || k > m) return -std::numeric_limits<double>::infinity();
    const double lm = static_cast<double>(m), lk = static_cast<double>(k);
    return std::lgamma(lm + 1.0) - std::lgamma(lk + 1.0) - std::lgamma(lm - lk + 1.0) -
           lm * std::log(2.0);
}

double log_binom_tail_half(long long m, long long k) {
    if (k <= 0) return 0.0;
    if (k > m) return -std::numeric_limits<double>::infinity();
    // Terms decrease once k >= (m+1)/2; for smaller k sum the complement.
    if (2 * k <= m)
        return std::log1p(-std::exp(log_binom_tail_half(m, m - k + 1)));
    // s = sum_{j=k..m} C(m,j)/C(m,k), accumulated via term ratios.
    double t = 1.0, s = 1.0;
    for (long long j = k; j < m; ++j) {
        t *= static_cast<double>(m - j) / static_cast<double>(j + 1);
        s += t;
        if (t < 1e-18 * s) break;
    }
    return log_binom_pmf_half(m, k) + std::log(s);
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
static double incbeta_cf(double x, double a, double b) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h;
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0) || !(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("regularized_incomplete_beta: bad arguments");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * incbeta_cf(x, a, b) / a;
    return 1.0 - front * incbeta_cf(1.0 - x, b, a) / b;
}

double incomplete_beta_inv(double p, double a, double b) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("incomplete_beta_inv: p outside [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0, x = a / (a + b);
    for (int it = 0; it < 200; ++it) {
        const double f = regularized_incomplete_beta(x, a, b) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
        const double pdf = std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta);
        double nx = (pdf > 1e-280) ? x - f / pdf : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::fabs(nx - x) < 1e-15 * (1.0 + std::fabs(x))) return nx;
        x = nx;
    }
    return x;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1].
static constexpr double kGlNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
static constexpr double kGlWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

static double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) * 0.3989422804014326779;
}

double bivariate_normal_cdf(double x, double y, double rho) {
    if (!(rho > -1.0 && rho < 1.0)) {
        if (rho >= 1.0) return normal_cdf(std::min(x, y));
        return std::max(0.0, normal_cdf(x) + normal_cdf(y) - 1.0);
    }
    if (rho == 0.0) return normal_cdf(x) * normal_cdf(y);
    // P(Z1<=x, Z2<=y) = int_{-inf}^{x} phi(z) Phi((y - rho z)/sqrt(1-rho^2)) dz
    const double lo = -8.5, hi = std::min(x, 8.5);
    if (hi <= lo) return 0.0;
    const double s = std::sqrt(1.0 - rho * rho);
    const int nseg = std::max(4, static_cast<int>(std::ceil((hi - lo) / 0.5)));
    const double step = (hi - lo) / nseg;
    double total = 0.0;
    for (int seg = 0; seg < nseg; ++seg) {
        const double a = lo + seg * step, mid = a + 0.5 * step, half = 0.5 * step;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double zp = mid + half * kGlNodes[i];
            const double zm = mid - half * kGlNodes[i];
            acc += kGlWeights[i] * (normal_pdf(zp) * normal_cdf((y - rho * zp) / s) +
                                    normal_pdf(zm) * normal_cdf((y - rho * zm) / s));
        }
        total += acc * half;
    }
    return std::clamp(total, 0.0, 1.0);
}

} // namespace pairdiag::math
