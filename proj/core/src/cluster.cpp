#include "pairdiag/cluster.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pairdiag::cluster {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> label_indices(std::span<const std::string> labels, int& k_out) {
    std::map<std::string, int> ids;
    std::vector<int> idx(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.emplace(labels[i], static_cast<int>(ids.size()));
        idx[i] = it->second;
    }
    k_out = static_cast<int>(ids.size());
    return idx;
}

} // namespace

double icc_anova(std::span<const double> d, std::span<const int> labels, int k) {
    if (k < 2) throw DegeneracyError("icc_anova: need at least two clusters");
    if (d.size() != labels.size())
        throw std::invalid_argument("icc_anova: series/label length mismatch");
    const double n = static_cast<double>(d.size());
    std::vector<double> sum(k, 0.0);
    std::vector<long long> cnt(k, 0);
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const int g = labels[i];
        if (g < 0 || g >= k) throw std::invalid_argument("icc_anova: label out of range");
        sum[g] += d[i];
        ++cnt[g];
        total += d[i];
    }
    for (int g = 0; g < k; ++g)
        if (cnt[g] == 0) throw DegeneracyError("icc_anova: empty cluster");
    const double grand = total / n;

    double ssb = 0.0, sum_m2 = 0.0;
    for (int g = 0; g < k; ++g) {
        const double mg = sum[g] / cnt[g];
        ssb += cnt[g] * (mg - grand) * (mg - grand);
        sum_m2 += static_cast<double>(cnt[g]) * cnt[g];
    }
    double ssw = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double mg = sum[labels[i]] / cnt[labels[i]];
        ssw += (d[i] - mg) * (d[i] - mg);
    }
    if (ssb == 0.0 && ssw == 0.0) return 0.0; // constant D
    const double msb = ssb / (k - 1);
    const double msw = d.size() > static_cast<std::size_t>(k)
                           ? ssw / (n - k)
                           : 0.0; // every cluster a singleton
    const double n0 = (n - sum_m2 / n) / (k - 1);
    const double denom = msb + (n0 - 1.0) * msw;
    if (denom == 0.0) return 0.0;
    return (msb - msw) / denom;
}

ClusterStats cluster_stats(std::span<const double> d, std::span<const std::string> labels) {
    ClusterStats cs;
    std::vector<int> idx = label_indices(labels, cs.k);
    if (cs.k < 2) throw DegeneracyError("cluster_stats: need at least two clusters");
    std::vector<long long> sizes(cs.k, 0);
    for (int g : idx) ++sizes[g];
    cs.sizes = std::move(sizes);
    cs.m_bar = static_cast<double>(d.size()) / cs.k;
    bool constant = true;
    for (std::size_t i = 1; i < d.size(); ++i) constant = constant && d[i] == d[0];
    cs.degenerate = constant;
    cs.icc = icc_anova(d, idx, cs.k);
    cs.icc_plus = std::max(cs.icc, 0.0);
    cs.de = design_effect(cs.icc, cs.m_bar);
    return cs;
}

double design_effect(double icc, double m_bar) {
    if (!(m_bar >= 1.0)) throw std::invalid_argument("design_effect: m_bar must be >= 1");
    return 1.0 + (m_bar - 1.0) * std::max(icc, 0.0);
}

double cluster_required_n(double n_star_iid, double de) {
    if (!std::isfinite(n_star_iid)) return n_star_iid;
    return std::ceil(n_star_iid * de);
}

std::vector<ClusterPairVerdict> verdicts_for_resample(
    const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs,
    std::span<const double> n_star_iid_real, std::span<const int> cluster_draw,
    double n_items) {
    // Build the item index list of the drawn clusters; each draw keeps its own
    // group id so a cluster drawn twice contributes two groups.
    int k0 = 0;
    std::vector<int> base = label_indices(m.clusters, k0);
    std::vector<std::vector<std::size_t>> members(k0);
    for (std::size_t i = 0; i < base.size(); ++i) members[base[i]].push_back(i);

    std::vector<std::size_t> items;
    std::vector<int> groups;
    for (std::size_t g = 0; g < cluster_draw.size(); ++g) {
        for (std::size_t i : members[cluster_draw[g]]) {
            items.push_back(i);
            groups.push_back(static_cast<int>(g));
        }
    }
    const int k = static_cast<int>(cluster_draw.size());
    const double m_bar = static_cast<double>(items.size()) / k;

    std::vector<ClusterPairVerdict> out;
    out.reserve(pairs.size());
    std::vector<double> d(items.size());
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [a, b] = pairs[pi];
        for (std::size_t j = 0; j < items.size(); ++j)
            d[j] = m.scores[a][items[j]] - m.scores[b][items[j]];
        ClusterPairVerdict v;
        v.icc = icc_anova(d, groups, k);
        v.de = design_effect(v.icc, m_bar);
        v.n_star_cluster =
            std::isfinite(n_star_iid_real[pi]) ? n_star_iid_real[pi] * v.de : kInf;
        v.unresolved = !(n_items >= v.n_star_cluster);
        out.push_back(v);
    }
    return out;
}

namespace {
double nearest_rank(std::vector<double>& v, double q) {
    std::sort(v.begin(), v.end());
    const auto idx = static_cast<std::size_t>(
        std::llround(q * static_cast<double>(v.size() - 1)));
    return v[std::min(idx, v.size() - 1)];
}
} // namespace

ClusterBootstrapResult cluster_bootstrap_verdicts(
    const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs, int b_reps,
    std::uint64_t seed, const TestConfig& cfg) {
    if (!m.has_clusters()) throw ValidationError("cluster bootstrap: matrix has no cluster labels");
    if (b_reps < 1) throw std::invalid_argument("cluster bootstrap: b_reps must be >= 1");
    m.validate();
    cfg.validate();
    int k = 0;
    (void)label_indices(m.clusters, k);
    if (k < 2) throw DegeneracyError("cluster bootstrap: need at least two clusters");
    const double n_items = static_cast<double>(m.n_items());

    // Full-data point estimates, held fixed across replicates.
    std::vector<double> n_star_iid(pairs.size());
    std::vector<ClusterPairVerdict> point;
    {
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            const auto [a, b] = pairs[pi];
            const auto s = paired::summarize_pair(m.scores[a], m.scores[b]);
            n_star_iid[pi] = s.sigma_d_hat > 0.0
                                 ? paired::required_n_real(s.delta_hat, s.sigma_d_hat, cfg)
                                 : kInf;
        }
        std::vector<int> identity(k);
        std::iota(identity.begin(), identity.end(), 0);
        point = verdicts_for_resample(m, pairs, n_star_iid, identity, n_items);
    }

    std::vector<std::vector<double>> icc_rep(pairs.size()), de_rep(pairs.size()),
        ns_rep(pairs.size());
    std::vector<long long> unres_pair(pairs.size(), 0);
    std::vector<long long> count_hist(pairs.size() + 1, 0);

    for (int rep = 0; rep < b_reps; ++rep) {
        Rng rng = derive_rng(seed, {0x636c7573ULL, static_cast<std::uint64_t>(rep)});
        std::vector<int> draw(k);
        for (int g = 0; g < k; ++g) draw[g] = static_cast<int>(rng.uniform_index(k));
        const auto vs = verdicts_for_resample(m, pairs, n_star_iid, draw, n_items);
        int unres = 0;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            icc_rep[pi].push_back(vs[pi].icc);
            de_rep[pi].push_back(vs[pi].de);
            ns_rep[pi].push_back(vs[pi].n_star_cluster);
            unres_pair[pi] += vs[pi].unresolved;
            unres += vs[pi].unresolved;
        }
        ++count_hist[unres];
    }

    ClusterBootstrapResult r;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        ClusterPairReport rep;
        rep.model_a = m.model_names[pairs[pi].first];
        rep.model_b = m.model_names[pairs[pi].second];
        rep.icc_pt = point[pi].icc;
        rep.de_pt = point[pi].de;
        rep.n_star_pt = point[pi].n_star_cluster;
        rep.icc_lo = nearest_rank(icc_rep[pi], 0.05);
        rep.icc_hi = nearest_rank(icc_rep[pi], 0.95);
        rep.de_lo = nearest_rank(de_rep[pi], 0.05);
        rep.de_hi = nearest_rank(de_rep[pi], 0.95);
        rep.n_star_lo = nearest_rank(ns_rep[pi], 0.05);
        rep.n_star_hi = nearest_rank(ns_rep[pi], 0.95);
        rep.pr_unresolved = static_cast<double>(unres_pair[pi]) / b_reps;
        r.pairs.push_back(std::move(rep));
    }
    r.count_probability.resize(count_hist.size());
    for (std::size_t i = 0; i < count_hist.size(); ++i)
        r.count_probability[i] = static_cast<double>(count_hist[i]) / b_reps;
    return r;
}

double ClusterBootstrapResult::pr_count_at_least(int c) const {
    double p = 0.0;
    for (std::size_t i = std::max(c, 0); i < count_probability.size(); ++i)
        p += count_probability[i];
    return p;
}

std::vector<int> loso(const ScoreMatrix& m, std::span<const std::pair<int, int>> pairs,
                      const TestConfig& cfg) {
    if (!m.has_clusters()) throw ValidationError("loso: matrix has no cluster labels");
    cfg.validate();
    int k = 0;
    std::vector<int> base = label_indices(m.clusters, k);
    if (k < 3) throw DegeneracyError("loso: need at least three clusters");

    std::vector<int> counts;
    counts.reserve(k);
    for (int drop = 0; drop < k; ++drop) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (base[i] != drop) keep.push_back(i);
        const double n_remaining = static_cast<double>(keep.size());

        // Remap remaining clusters to dense ids.
        std::vector<int> remap(k, -1);
        int kk = 0;
        std::vector<int> groups(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) {
            int g = base[keep[j]];
            if (remap[g] < 0) remap[g] = kk++;
            groups[j] = remap[g];
        }
        const double m_bar = n_remaining / kk;

        int unres = 0;
        std::vector<double> sa(keep.size()), sb(keep.size()), d(keep.size());
        for (const auto& [a, b] : pairs) {
            for (std::size_t j = 0; j < keep.size(); ++j) {
                sa[j] = m.scores[a][keep[j]];
                sb[j] = m.scores[b][keep[j]];
                d[j] = sa[j] - sb[j];
            }
            const auto s = paired::summarize_pair(sa, sb);
            const double ns_iid = s.sigma_d_hat > 0.0
                                      ? paired::required_n_real(s.delta_hat, s.sigma_d_hat, cfg)
                                      : kInf;
            const double de = design_effect(icc_anova(d, groups, kk), m_bar);
            const double ns_cluster = std::isfinite(ns_iid) ? ns_iid * de : kInf;
            unres += !(n_remaining >= ns_cluster);
        }
        counts.push_back(unres);
    }
    return counts;
}

ScoreMatrix relabel_clusters(const ScoreMatrix& m, const RelabelOptions& opt) {
    m.validate();
    ScoreMatrix out = m;
    const std::size_t n = m.n_items();
    switch (opt.scheme) {
        case RelabelScheme::Random: {
            if (opt.k < 2) throw std::invalid_argument("relabel: random scheme needs k >= 2");
            Rng rng = derive_rng(opt.seed, {0x72656c61ULL});
            out.clusters.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                out.clusters[i] = "rc" + std::to_string(rng.uniform_index(opt.k));
            break;
        }
        case RelabelScheme::DifficultyQuartiles: {
            if (m.n_models() < 2)
                throw ValidationError("relabel: difficulty scheme requires >= 2 models");
            std::vector<double> mean(n, 0.0);
            for (const auto& col : m.scores)
                for (std::size_t i = 0; i < n; ++i) mean[i] += col[i];
            for (double& v : mean) v /= static_cast<double>(m.n_models());
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t i, std::size_t j) { return mean[i] < mean[j]; });
            out.clusters.resize(n);
            for (std::size_t r = 0; r < n; ++r)
                out.clusters[order[r]] = "q" + std::to_string(std::min<std::size_t>(4 * r / n, 3));
            break;
        }
        case RelabelScheme::SplitHalf: {
            if (!m.has_clusters())
                throw ValidationError("relabel: split scheme requires existing labels");
            std::map<std::string, int> seen;
            out.clusters.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const int ord = seen[m.clusters[i]]++;
                out.clusters[i] = m.clusters[i] + (ord % 2 == 0 ? "/a" : "/b");
            }
            break;
        }
    }
    return out;
}

std::string cluster_report_to_csv(const ClusterBootstrapResult& r) {
    std::ostringstream os;
    os.precision(10);
    os << "pair,icc_pt,icc_lo,icc_hi,de_pt,de_lo,de_hi,nstar_pt,nstar_lo,nstar_hi,"
          "pr_unresolved\n";
    for (const auto& p : r.pairs) {
        os << p.model_a << " vs " << p.model_b << ',' << p.icc_pt << ',' << p.icc_lo << ','
           << p.icc_hi << ',' << p.de_pt << ',' << p.de_lo << ',' << p.de_hi << ','
           << p.n_star_pt << ',' << p.n_star_lo << ',' << p.n_star_hi << ','
           << p.pr_unresolved << '\n';
    }
    return os.str();
}

} // namespace pairdiag::cluster
