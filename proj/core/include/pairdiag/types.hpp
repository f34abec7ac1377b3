#pragma once

#include <string>
#include <vector>

namespace pairdiag {

enum class Multiplicity { None, Bonferroni, Sidak, Holm, BH };

const char* to_string(Multiplicity m);
Multiplicity multiplicity_from_string(const std::string& s);

// Operating point for every test and inversion. Defaults are the conventional
// (alpha, 1-beta) = (0.05, 0.8) two-sided point; all tests are two-sided.
struct TestConfig {
    double alpha = 0.05;
    double power = 0.80;
    Multiplicity multiplicity = Multiplicity::None;
    int family_size = 1;

    void validate() const; // throws std::invalid_argument
};

// N items scored by K models. Scores are values in [0,1]; the matrix is
// flagged binary iff every value is exactly 0 or 1. Cluster labels, when
// present, cover every item.
struct ScoreMatrix {
    std::vector<std::string> items;
    std::vector<std::string> clusters;             // empty, or one label per item
    std::vector<std::string> model_names;
    std::vector<std::vector<double>> scores;       // [model][item]
    bool binary = false;

    std::size_t n_items() const { return items.size(); }
    std::size_t n_models() const { return model_names.size(); }
    bool has_clusters() const { return !clusters.empty(); }

    void validate() const; // throws ValidationError
};

// Sufficient statistics for one model pair on shared items. Contingency
// counts are meaningful only when binary. sigma_d_hat uses the divide-by-N
// convention so that for binary data sigma^2 == psi - delta^2 exactly.
struct PairedSummary {
    long long n = 0;
    double p_a = 0.0, p_b = 0.0;
    long long n11 = 0, n10 = 0, n01 = 0, n00 = 0; // n10 = b, n01 = c
    bool binary = false;
    double delta_hat = 0.0;
    double rho_hat = 0.0;
    double sigma_d_hat = 0.0;

    long long b() const { return n10; }
    long long c() const { return n01; }
};

// Output of the level-alpha / power-(1-beta) inversion at an observed gap.
// n_star is the ceiled required paired count (+inf when delta == 0);
// n_star_real is the un-ceiled value used for ratio computations.
struct ResolutionResult {
    double n_star = 0.0;
    double n_star_real = 0.0;
    double mde = 0.0;
    double q = 0.0;
    double t_stat = 0.0;
    bool resolved = false;
    bool degenerate = false; // delta == 0 sentinel ("far beyond resolution")
};

} // namespace pairdiag
