#pragma once

#include "pairdiag/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

// =============================================================================
// Mixture e-process over discordant-pair signs for anytime-valid paired
// testing. Conditioned on the discordant count, signs are fair-coin under
// H0, so e_n = sum_i w_i (2 theta_i)^{b_n} (2 (1-theta_i))^{c_n} is a
// nonnegative supermartingale with e_0 = 1; rejecting at the first
// e_n >= 1/alpha is valid at any data-dependent stopping time.
//
// Concordant items contribute no update. All accumulation is in log space;
// b+c up to 1e6 stays finite.
// =============================================================================

namespace pairdiag::eprocess {

struct MixtureGrid {
    std::vector<double> thetas;  // support points in (0,1) \ {1/2}
    std::vector<double> weights; // positive, sum to 1

    void validate() const; // throws std::invalid_argument

    // The default 98-point uniform grid {0.01..0.49, 0.51..0.99}.
    static MixtureGrid uniform98();
    // Two-point mixture at {0.4, 0.6}.
    static MixtureGrid two_point();
    // Beta(2,2) discretized at `points` equal-mass quantiles.
    static MixtureGrid beta22(int points = 200);
    static MixtureGrid from_name(const std::string& name);
};

enum class Sign : int { AWins = +1, BWins = -1 };

// Value-semantic e-process state; update functionally or in place.
class EProcess {
public:
    explicit EProcess(MixtureGrid grid);

    void update(Sign s);
    double log_e() const;
    // Cheap upper bound max_i acc_i + log(#points); log_e() can cross the
    // threshold only if this does.
    double log_e_upper_bound() const;
    long long b() const { return b_; }
    long long c() const { return c_; }
    const MixtureGrid& grid() const { return grid_; }

private:
    MixtureGrid grid_;
    std::vector<double> log_2t_, log_2q_, acc_;
    long long b_ = 0, c_ = 0;
};

// log e at accumulated counts (b, c) without stepping through a stream.
double log_e_at(const MixtureGrid& grid, long long b, long long c);

struct TestResult {
    bool rejected = false;
    long long stop_index = -1;          // 1-based index into the sign stream
    std::vector<double> trajectory;     // log e after each sign
};

// Scans the discordant-sign sequence (+1 = A wins, -1 = B wins), stopping at
// the first crossing of log(1/alpha). The trajectory covers processed signs.
TestResult eprocess_test(std::span<const int> signs, double alpha,
                         const MixtureGrid& grid);

// CSV (n, log_e, threshold) for trajectory plots.
std::string trajectory_to_csv(const TestResult& r, double alpha);

struct Calibration {
    double type1 = 0.0;
    double type1_mcse = 0.0;
    double reject_rate = 0.0;
    double mean_stop_ratio = 0.0;
    double stop_ratio_mcse = 0.0;
    double mean_stop = 0.0;
    double n_star_ref = 0.0; // fixed-n required N at (p, rho_z-as-rho, delta)
};

// Monte Carlo calibration on latent-Gaussian paired Bernoulli streams:
// a null arm (delta = 0) for empirical Type-I over n_max items and an H1 arm
// at the given delta for rejection rate and mean stopping index. The
// stopping-ratio divisor is the fixed-n required N at (p, rho_z, delta) with
// rho_z entering the difference variance directly.
Calibration calibrate_eprocess(double p, double rho_z, double delta, long long n_max,
                               int trials, std::uint64_t seed,
                               const MixtureGrid& grid = MixtureGrid::uniform98(),
                               const TestConfig& cfg = {});

// Effective threshold inflation at horizon n: the minimal discordant
// imbalance k = |b - c| whose e-value crosses 1/alpha at m ~= psi*n
// discordant items, converted to the equivalent one-shot z = k/sqrt(m) and
// mapped through the required-N template:
//   ((z_eq + z_{1-beta}) / (z_{1-alpha/2} + z_{1-beta}))^2.
// With no psi given, the median factor over representative close-pair
// discordance rates {0.005, 0.01, 0.02} is returned. +inf when no
// admissible imbalance crosses.
double threshold_inflation_at(long long n, double alpha,
                              const MixtureGrid& grid = MixtureGrid::uniform98(),
                              std::optional<double> psi = std::nullopt,
                              const TestConfig& cfg = {});

} // namespace pairdiag::eprocess
