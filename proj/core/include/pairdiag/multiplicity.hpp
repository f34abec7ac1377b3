#pragma once

#include "pairdiag/types.hpp"

#include <span>
#include <vector>

// =============================================================================
// Family-level alpha adjustment and verdict procedures: Bonferroni, Sidak,
// Holm step-down, Benjamini-Hochberg step-up, and the required-N inflation
// factor for the single-level methods.
// =============================================================================

namespace pairdiag::multiplicity {

// Per-test level for bonferroni (alpha/m) and sidak (1-(1-alpha)^(1/m)).
// Stepwise methods (holm, bh) have no single per-test level; requesting one
// throws std::invalid_argument -- use stepwise_verdicts instead.
double adjust_alpha(double alpha, int m, Multiplicity method);

// ((z_{1-a'/2} + z_{1-beta}) / (z_{1-a/2} + z_{1-beta}))^2 for bonferroni and
// sidak; holm maps to its bonferroni upper bound; none and bh return 1.
double nstar_inflation(double alpha, double power, int m, Multiplicity method);

// Holm step-down / BH step-up reject flags in input order. Ties are broken
// by stable input order after sorting by p. Throws on an empty family.
std::vector<bool> stepwise_verdicts(std::span<const double> p_values, double alpha,
                                    Multiplicity method);

} // namespace pairdiag::multiplicity
