#pragma once

#include <cstdint>
#include <span>
#include <vector>

// =============================================================================
// Distribution and special-function numerics used across the library.
//
// Everything here is deterministic double-precision with no global state.
// normal_quantile is a rational approximation good to ~1e-15 absolute, which
// bounds every downstream integer required-N decision.
// =============================================================================

namespace pairdiag::math {

// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

// Inverse standard normal CDF (Wichura's AS241 rational approximation).
// p must lie in (0,1).
double normal_quantile(double p);

// Upper-tail quantile helper: z such that P(Z <= z) = 1 - a.
double z_upper(double a);

// Upper tail of the chi-square distribution with 1 degree of freedom.
double chi2_sf1(double x);

// log(sum(exp(v))) with the usual max shift.
double log_sum_exp(std::span<const double> v);

// log P(Bin(m, 1/2) = k), exact via lgamma.
double log_binom_pmf_half(long long m, long long k);

// log P(Bin(m, 1/2) >= k), exact summation (ratio recurrence from the
// largest term, so it stays exact for m up to ~1e6 without underflow).
double log_binom_tail_half(long long m, long long k);

// Regularized incomplete beta function I_x(a, b) via the Lentz continued
// fraction; relative accuracy ~1e-14.
double regularized_incomplete_beta(double x, double a, double b);

// Inverse of I_x(a, b) in x, by Newton with bisection fallback.
double incomplete_beta_inv(double p, double a, double b);

// Bivariate standard normal CDF P(Z1 <= x, Z2 <= y) with correlation rho,
// computed by composite Gauss-Legendre quadrature on the conditional form.
double bivariate_normal_cdf(double x, double y, double rho);

} // namespace pairdiag::math
