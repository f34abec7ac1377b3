#pragma once

#include "pairdiag/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

// =============================================================================
// Intra-cluster correlation of paired differences, design effect, cluster-
// adjusted required-N, the cluster bootstrap of the verdict, leave-one-
// subject-out recomputation, and alternative clusterings.
//
// Bootstrap replicates and LOSO drops are independent tasks; RNG streams are
// derived from (seed, task index), so results do not depend on execution
// order.
// =============================================================================

namespace pairdiag::cluster {

struct ClusterStats {
    int k = 0;
    std::vector<long long> sizes;
    double m_bar = 0.0;   // arithmetic mean cluster size N/k
    double icc = 0.0;     // signed one-way ANOVA estimate
    double icc_plus = 0.0;
    double de = 1.0;      // 1 + (m_bar - 1) * icc_plus
    bool degenerate = false; // constant D: icc defined as 0
};

// One-way ANOVA estimator on the paired-difference series:
//   ICC = (MSB - MSW) / (MSB + (n0 - 1) MSW),
// n0 = (N - sum m_k^2 / N) / (k - 1). May be negative. Throws
// DegeneracyError when fewer than two clusters are present.
double icc_anova(std::span<const double> d_series, std::span<const int> labels, int k);

// Full stats for a difference series under string labels.
ClusterStats cluster_stats(std::span<const double> d_series,
                           std::span<const std::string> labels);

// DE = 1 + (m_bar - 1) * max(icc, 0).
double design_effect(double icc, double m_bar);

// ceil(n_star_iid * de); +inf passes through.
double cluster_required_n(double n_star_iid, double de);

struct ClusterPairVerdict {
    double icc = 0.0;
    double de = 1.0;
    double n_star_cluster = 0.0; // un-ceiled real
    bool unresolved = false;     // n_star_cluster > n
};

// Per-pair cluster verdict for one cluster index multiset. (p_a, p_b, rho)
// enter through the fixed IID n_star passed per pair; only the cluster
// structure of D is recomputed. Identity indices reproduce point estimates
// bit-exactly.
std::vector<ClusterPairVerdict> verdicts_for_resample(
    const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs,
    std::span<const double> n_star_iid_real, std::span<const int> cluster_draw,
    double n_items);

struct ClusterPairReport {
    std::string model_a, model_b;
    double icc_pt = 0.0, icc_lo = 0.0, icc_hi = 0.0;
    double de_pt = 1.0, de_lo = 1.0, de_hi = 1.0;
    double n_star_pt = 0.0, n_star_lo = 0.0, n_star_hi = 0.0;
    double pr_unresolved = 0.0;
};

struct ClusterBootstrapResult {
    std::vector<ClusterPairReport> pairs;
    std::vector<double> count_probability; // P(unresolved count == i), i = 0..n_pairs
    double pr_count_at_least(int c) const;
};

// Resamples the k clusters with replacement B times, holding per-pair
// (p_a, p_b, rho) at full-data estimates so the intervals isolate
// cluster-structure uncertainty. Percentiles are the 5th and 95th
// (nearest-rank on the sorted replicate values).
ClusterBootstrapResult cluster_bootstrap_verdicts(
    const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs, int b_reps,
    std::uint64_t seed, const TestConfig& cfg = {});

// Drops each cluster in turn and recomputes every statistic (marginals,
// rho, IID and cluster N*) on the remaining items; returns the
// cluster-corrected unresolved count per drop. Requires k >= 3.
std::vector<int> loso(const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs,
                      const TestConfig& cfg = {});

enum class RelabelScheme { Random, DifficultyQuartiles, SplitHalf };

struct RelabelOptions {
    RelabelScheme scheme = RelabelScheme::Random;
    int k = 14;                 // random scheme: number of clusters
    std::uint64_t seed = 42;    // random scheme
};

// random: uniform assignment into k clusters. difficulty_quartiles: quartiles
// of per-item mean score across models (needs >= 2 models). split_half: each
// existing cluster split by within-cluster item parity (doubles k).
ScoreMatrix relabel_clusters(const ScoreMatrix& m, const RelabelOptions& opt);

// CSV mirroring the bootstrap report columns.
std::string cluster_report_to_csv(const ClusterBootstrapResult& r);

} // namespace pairdiag::cluster
