#pragma once

#include "pairdiag/types.hpp"

#include <span>
#include <string>
#include <vector>

// =============================================================================
// The unpaired Cohen-h shortcut, its second-order constant C(p, rho), the
// admissible-effect bound delta*, and the (p, rho, delta) grid audit of the
// shortcut against the correct paired required-N.
//
// Audit ratios use un-ceiled real-valued sizes; ceiling would contaminate
// the small-delta asymptotics.
// =============================================================================

namespace pairdiag::shortcut {

// h = 2 asin(sqrt(p1)) - 2 asin(sqrt(p2)); antisymmetric in a swap.
double cohens_h(double p1, double p2);

struct ShortcutSizes {
    double n_per_arm_real = 0.0; // K / h^2
    double n_h_real = 0.0;       // (1 - rho) K / h^2
    long long n_per_arm = 0;
    long long n_h = 0;
};

// Unpaired per-arm size and the (1-rho)-adjusted shortcut. Throws
// DegeneracyError when p1 == p2 (h = 0).
ShortcutSizes shortcut_n(double p1, double p2, double rho, const TestConfig& cfg = {});

// C(p, rho) = 1/2 |(1+rho)(1-2p)^2 / (16 (1-rho) p^2 (1-p)^2) - 1/(6 p (1-p))|.
// Equals 1/3 at p = 1/2 for every admissible rho. Throws as rho -> 1.
double lemma_constant(double p, double rho);

// delta* = sqrt(epsilon / C(p, rho)), leading order; +inf when C == 0.
double admissible_delta_star(double p, double rho, double epsilon);

struct AuditCell {
    double p = 0.0, rho = 0.0, delta = 0.0;
    double ratio = 0.0;      // n_h / N*, un-ceiled
    double deviation = 0.0;  // |ratio - 1/2|
    double c_pred = 0.0;     // C(p, rho)
    bool skipped = false;    // inadmissible (p +- delta/2, rho) cell
};

// Midpoint parameterization p_A = p + delta/2, p_B = p - delta/2 per cell.
// Inadmissible cells are marked skipped, not erroneous.
std::vector<AuditCell> lemma_numeric_audit(std::span<const double> p_grid,
                                           std::span<const double> rho_grid,
                                           std::span<const double> delta_grid,
                                           const TestConfig& cfg = {});

// CSV with header p,rho,delta,ratio,deviation,c_pred (skipped cells omitted).
std::string audit_to_csv(const std::vector<AuditCell>& cells);

} // namespace pairdiag::shortcut
