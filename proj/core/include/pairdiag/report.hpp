#pragma once

#include "pairdiag/csv.hpp"
#include "pairdiag/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// =============================================================================
// The end-to-end diagnose pipeline: per-pair verdicts under fixed-n, family,
// anytime, and cluster procedures, the |delta|-bucket table, the reporting
// checklist, and JSON / text renderings.
//
// A report is a pure function of (input, options); repeated runs are
// bit-identical at fixed seeds. Pair output order follows the enumeration,
// never completion order.
// =============================================================================

namespace pairdiag::report {

enum class FamilyConvention { Adjacent, AllPairs };

const char* to_string(FamilyConvention f);
FamilyConvention family_from_string(const std::string& s);

struct DiagnoseOptions {
    TestConfig config;
    FamilyConvention family = FamilyConvention::Adjacent;
    std::uint64_t seed = 42;
    int bootstrap_reps = 1000; // paired bootstrap test (item-level input)
    int nstar_ci_reps = 0;     // 0 = skip the bootstrap CI on N*
};

struct PairVerdict {
    std::string model_a, model_b;
    PairedSummary summary;
    // p-value variants; NaN where not applicable (graded input, counts-only).
    double p_chi2, p_exact, p_midp, p_cc, p_bootstrap;
    // required-N variants (ceiled; +inf possible; NaN = not applicable)
    double n_star_iid, n_star_discordance, n_star_cluster, n_star_family;
    double n_star_iid_real;
    double q, mde, t_stat;
    double anytime_factor; // threshold inflation at this pair's psi
    double de;             // cluster design effect (NaN without labels)
    bool resolved_fixed_n, resolved_family, resolved_anytime, resolved_cluster;
    bool degenerate; // delta_hat == 0 sentinel
    double nstar_ci_lo, nstar_ci_hi; // NaN unless requested
};

struct BucketRow {
    double lo, hi;       // |delta| bucket bounds (fractions; hi may be +inf)
    int pairs = 0;
    int unresolved = 0;  // fixed-n
    double r_median = 0; // r = N*/N = 1/q summarised across the bucket
    double r_worst = 0;
};

struct ChecklistRow {
    std::string quantity, definition, value;
};

struct DiagnoseReport {
    int schema_version = 1;
    TestConfig config;
    std::string family_convention;
    std::uint64_t seed = 42;
    std::string input_kind; // "matrix" | "counts"
    long long n_items = 0;
    bool binary = true;
    bool has_clusters = false;
    std::vector<PairVerdict> pairs;
    int unresolved_fixed_n = 0;
    int unresolved_family = 0;
    int unresolved_anytime = 0;
    int unresolved_cluster = 0; // meaningful only when has_clusters
    std::vector<BucketRow> buckets;
    std::vector<ChecklistRow> checklist;
};

// Pair family enumeration: adjacent-rank pairs ranked by mean score
// descending (ties broken lexicographically) or all unordered pairs.
std::vector<std::pair<int, int>> enumerate_pairs(const ScoreMatrix& m,
                                                 FamilyConvention family);

DiagnoseReport diagnose(const ScoreMatrix& m, const DiagnoseOptions& opt);
DiagnoseReport diagnose_counts(std::span<const io::CountsRow> rows,
                               const DiagnoseOptions& opt);

// Machine rendering. Non-finite numbers: +inf -> "inf" (string), NaN -> null.
std::string emit_report_json(const DiagnoseReport& r);
DiagnoseReport parse_report_json(const std::string& text);

// Human rendering at four significant figures.
std::string emit_report_text(const DiagnoseReport& r);

} // namespace pairdiag::report
