#pragma once

#include "pairdiag/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

// =============================================================================
// Paired bootstrap test, bootstrap CIs on required-N, prospective power by
// subsampling, synthetic paired generators (latent-Gaussian copula), and the
// Monte Carlo calibration grid for the five paired-binary test variants.
//
// Determinism: identical (spec, seed) give bit-identical output; trial
// streams are derived from (seed, trial index) so results are independent of
// execution order.
// =============================================================================

namespace pairdiag::sim {

struct GeneratorSpec {
    double p = 0.5;      // base marginal
    double delta = 0.0;  // true gap; marginals are p +- delta/2
    double rho_z = 0.0;  // latent-Gaussian correlation
    long long n = 0;
    std::uint64_t seed = 42;

    void validate() const;
};

using ScorePair = std::pair<std::vector<double>, std::vector<double>>;

// Correlated Bernoulli pair: threshold correlated standard normals at
// Phi^-1(p + delta/2) and Phi^-1(p - delta/2).
ScorePair gen_paired_bernoulli(const GeneratorSpec& spec);

// Paired graded pair: Gaussian copula into Beta(a, b) marginals; one margin
// mean-shifted by delta_shift with clamping to [0,1].
ScorePair gen_paired_graded(double alpha_shape, double beta_shape, double rho_z,
                            double delta_shift, long long n, std::uint64_t seed);

// Deterministic binary pair realizing an exact 2x2 contingency table.
ScorePair scores_from_counts(long long n11, long long n10, long long n01, long long n00);

// Bernoulli correlation induced by thresholding a latent-Gaussian pair.
double bernoulli_rho_from_latent(double rho_z, double p_a, double p_b);
// Inverse mapping by bisection.
double latent_rho_for_bernoulli(double rho, double p_a, double p_b);

struct BootstrapTestResult {
    double ci_lo = 0.0, ci_hi = 0.0;
    bool reject = false;
    double p_value = 1.0; // 2 min(F_boot(0), 1 - F_boot(0)), capped at 1
};

// Two-sided percentile-bootstrap test of mean(D) = 0: resample item indices
// with replacement, reject when 0 is outside the (alpha/2, 1-alpha/2)
// percentile interval. Works on binary and graded scores.
BootstrapTestResult paired_bootstrap_test(std::span<const double> a,
                                          std::span<const double> b, double alpha,
                                          int b_reps, std::uint64_t seed);

// 5th-95th percentile interval on required-N across item resamples;
// resamples with delta_hat = 0 map to +inf and sort above all finite values.
std::pair<double, double> bootstrap_nstar_ci(std::span<const double> a,
                                             std::span<const double> b, int b_reps,
                                             const TestConfig& cfg, std::uint64_t seed);

// Fraction of subsample-with-replacement trials of size n_target on which the
// chi^2 McNemar test rejects at alpha.
double bootstrap_power(std::span<const double> a, std::span<const double> b,
                       long long n_target, double alpha, int trials, std::uint64_t seed);

// Smallest |delta| whose exact two-sided power at n equals target, where the
// difference variance follows Eq.-style marginals p +- delta/2 at fixed rho.
double tune_delta_for_power(double p, double rho, double n, double target,
                            const TestConfig& cfg = {});

// delta solving the same power equation with the variance implied by the
// latent-Gaussian generator at rho_z (used by the calibration grid).
double tune_delta_for_power_latent(double p, double rho_z, double n, double target,
                                   const TestConfig& cfg = {});

struct CalibrationCell {
    std::string variant;
    double p = 0.0, rho_z = 0.0;
    long long n = 0;
    double type1 = 0.0, type1_mcse = 0.0;
    double power = 0.0, power_mcse = 0.0;
    double tuned_delta = 0.0;
};

// Empirical Type-I (delta = 0) and power (delta tuned to the target) for the
// five variants {chi2, exact, midp, cc, bootstrap} on the (p, rho_z) grid.
std::vector<CalibrationCell> calibration_grid(std::span<const double> p_set,
                                              std::span<const double> rho_z_set,
                                              long long n, int trials, std::uint64_t seed,
                                              const TestConfig& cfg = {},
                                              int boot_reps = 500);

std::string calibration_to_csv(const std::vector<CalibrationCell>& cells);

} // namespace pairdiag::sim
