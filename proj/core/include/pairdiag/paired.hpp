#pragma once

#include "pairdiag/types.hpp"

#include <span>
#include <utility>

// =============================================================================
// Paired sufficient statistics, Bernoulli difference-variance algebra,
// Hoeffding admissibility bounds, and the level-alpha / power-(1-beta)
// inversion: required N, minimum detectable effect, resolution ratio q.
//
// All functions are pure; safe to call concurrently.
// =============================================================================

namespace pairdiag::paired {

// Sufficient statistics for one pair of score sequences on shared items.
// Binary inputs get contingency counts and the phi coefficient as rho_hat;
// graded inputs get Pearson correlation on raw scores.
PairedSummary summarize_pair(std::span<const double> scores_a,
                             std::span<const double> scores_b);

// Var(X_A - X_B) for Bernoulli marginals with within-pair correlation rho:
// pa*qa + pb*qb - 2*rho*sqrt(pa*qa*pb*qb). rho must be admissible.
double bernoulli_diff_variance(double p_a, double p_b, double rho);

// Attainable correlation interval [rho_min, rho_max] for two Bernoulli
// variables with the given interior marginals.
std::pair<double, double> admissible_rho_bounds(double p_a, double p_b);

// T = delta_hat * sqrt(N) / sigma_d_hat. Throws DegeneracyError when the
// paired variance is zero (all D_i equal).
double wald_statistic(const PairedSummary& s);

// Exact two-sided power at a fixed alternative:
//   Phi(-z_{1-a/2} - mu) + 1 - Phi(z_{1-a/2} - mu),  mu = |delta| sqrt(n) / sigma_d.
double power_at(double delta, double sigma_d, double n, double alpha);

// Multiplicity-adjusted per-test level used inside the inversion. Stepwise
// methods map to their closed-form bound: holm -> alpha/m; bh -> alpha.
double alpha_for_inversion(const TestConfig& cfg);

// Un-ceiled required paired count ((z_{1-a'/2}+z_{1-b}) sigma_d / |delta|)^2.
// Returns +inf when delta == 0.
double required_n_real(double delta, double sigma_d, const TestConfig& cfg = {});

// Ceiled integer-valued required N (+inf sentinel preserved).
double required_n(double delta, double sigma_d, const TestConfig& cfg = {});

// Minimum detectable effect at sample size n.
double mde(double n, double sigma_d, const TestConfig& cfg = {});

// q = n / n_star_real; 0 when n_star is infinite.
double resolution_ratio(double n, double n_star_real);

// Full inversion at the observed gap of a summary evaluated at size n
// (usually s.n). q, mde, resolved and the degenerate flag are filled;
// t_stat is NaN when the paired variance is zero.
ResolutionResult resolve(const PairedSummary& s, const TestConfig& cfg = {});

// Independent-samples Gaussian-accuracy required N: same inversion template
// with variance pa*qa + pb*qb.
double unpaired_required_n(double p_a, double p_b, const TestConfig& cfg = {});

// n_unpaired / n_paired at the same marginals and correlation. Equals
// 1/(1-rho) in the equal-marginal limit.
double efficiency_ratio(double p_a, double p_b, double rho, const TestConfig& cfg = {});

} // namespace pairdiag::paired
