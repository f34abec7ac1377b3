#include "pairdiag/report.hpp"

#include "pairdiag/cluster.hpp"
#include "pairdiag/eprocess.hpp"
#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"
#include "pairdiag/mcnemar.hpp"
#include "pairdiag/multiplicity.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/rng.hpp"
#include "pairdiag/simulate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace pairdiag::report {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using json = nlohmann::json;
} // namespace

const char* to_string(FamilyConvention f) {
    return f == FamilyConvention::Adjacent ? "adjacent" : "all-pairs";
}

FamilyConvention family_from_string(const std::string& s) {
    if (s == "adjacent") return FamilyConvention::Adjacent;
    if (s == "all-pairs") return FamilyConvention::AllPairs;
    throw std::invalid_argument("unknown family convention: " + s);
}

std::vector<std::pair<int, int>> enumerate_pairs(const ScoreMatrix& m,
                                                 FamilyConvention family) {
    const int k = static_cast<int>(m.n_models());
    if (k < 2) throw ValidationError("diagnose: need at least two models");
    if (family == FamilyConvention::AllPairs) {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) out.emplace_back(i, j);
        return out;
    }
    // Adjacent-rank: rank by mean score descending, ties lexicographic.
    std::vector<double> mean(k, 0.0);
    for (int j = 0; j < k; ++j)
        mean[j] = std::accumulate(m.scores[j].begin(), m.scores[j].end(), 0.0) /
                  static_cast<double>(m.n_items());
    std::vector<int> rank(k);
    std::iota(rank.begin(), rank.end(), 0);
    std::sort(rank.begin(), rank.end(), [&](int i, int j) {
        if (mean[i] != mean[j]) return mean[i] > mean[j];
        return m.model_names[i] < m.model_names[j];
    });
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i + 1 < k; ++i) out.emplace_back(rank[i], rank[i + 1]);
    return out;
}

namespace {

// Everything downstream of one pair's sufficient statistics.
PairVerdict verdict_from_summary(const PairedSummary& s, const std::string& name_a,
                                 const std::string& name_b, int family_m,
                                 const DiagnoseOptions& opt) {
    const TestConfig& cfg = opt.config;
    TestConfig fixed = cfg;
    fixed.multiplicity = Multiplicity::None;
    fixed.family_size = 1;

    PairVerdict v{};
    v.model_a = name_a;
    v.model_b = name_b;
    v.summary = s;
    v.p_chi2 = v.p_exact = v.p_midp = v.p_cc = v.p_bootstrap = kNaN;
    v.n_star_discordance = v.n_star_cluster = v.n_star_family = kNaN;
    v.anytime_factor = v.de = kNaN;
    v.nstar_ci_lo = v.nstar_ci_hi = kNaN;

    const auto res = paired::resolve(s, fixed);
    v.n_star_iid = res.n_star;
    v.n_star_iid_real = res.n_star_real;
    v.q = res.q;
    v.mde = res.mde;
    v.t_stat = res.t_stat;
    v.degenerate = res.degenerate;
    v.resolved_fixed_n = res.resolved;

    const double n = static_cast<double>(s.n);

    if (s.binary) {
        const long long b = s.b(), c = s.c();
        if (b + c > 0) {
            v.p_chi2 = mcnemar::mcnemar_chi2(b, c);
            v.p_exact = mcnemar::mcnemar_exact(b, c);
            v.p_midp = mcnemar::mcnemar_midp(b, c);
            v.p_cc = mcnemar::mcnemar_cc(b, c);
            v.n_star_discordance = mcnemar::required_n_mcnemar(b, c, s.n, fixed);
            const double psi = static_cast<double>(b + c) / n;
            v.anytime_factor = eprocess::threshold_inflation_at(
                s.n, cfg.alpha, eprocess::MixtureGrid::uniform98(), psi, fixed);
        }
    }

    // Family-adjusted required N via the inflation factor.
    const double infl = multiplicity::nstar_inflation(cfg.alpha, cfg.power, family_m,
                                                      cfg.multiplicity);
    if (std::isfinite(v.n_star_iid_real)) {
        v.n_star_family = std::ceil(v.n_star_iid_real * infl);
        v.resolved_family = n >= v.n_star_iid_real * infl;
    } else {
        v.n_star_family = kInf;
        v.resolved_family = false;
    }

    if (std::isfinite(v.anytime_factor) && std::isfinite(v.n_star_iid_real))
        v.resolved_anytime = n >= v.n_star_iid_real * v.anytime_factor;
    else if (s.binary)
        v.resolved_anytime = false; // no crossing possible or delta == 0
    else
        v.resolved_anytime = v.resolved_fixed_n; // anytime column is binary-only

    v.resolved_cluster = v.resolved_fixed_n; // overwritten when labels exist
    return v;
}

std::vector<BucketRow> make_buckets(const std::vector<PairVerdict>& pairs) {
    // |delta| bucket boundaries 1%, 2%, 5%, 15%.
    const double edges[] = {0.0, 0.01, 0.02, 0.05, 0.15, kInf};
    std::vector<BucketRow> rows;
    for (int e = 0; e + 1 < 6; ++e) {
        BucketRow r;
        r.lo = edges[e];
        r.hi = edges[e + 1];
        std::vector<double> rs;
        for (const auto& p : pairs) {
            const double d = std::fabs(p.summary.delta_hat);
            const bool in = e == 0 ? d <= r.hi : d > r.lo && d <= r.hi;
            if (!in) continue;
            ++r.pairs;
            r.unresolved += !p.resolved_fixed_n;
            rs.push_back(p.q > 0.0 ? 1.0 / p.q : kInf);
        }
        if (!rs.empty()) {
            std::sort(rs.begin(), rs.end());
            r.r_median = rs.size() % 2 == 1
                             ? rs[rs.size() / 2]
                             : 0.5 * (rs[rs.size() / 2 - 1] + rs[rs.size() / 2]);
            r.r_worst = rs.back();
        }
        rows.push_back(r);
    }
    return rows;
}

std::string fmt4(double v) {
    if (std::isnan(v)) return "-";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

std::vector<ChecklistRow> make_checklist(const DiagnoseReport& r,
                                         const DiagnoseOptions& opt) {
    double dmin = kInf, dmax = -kInf, mmin = kInf, mmax = -kInf, qmin = kInf,
           qmax = -kInf;
    int resolved = 0;
    for (const auto& p : r.pairs) {
        const double d = std::fabs(p.summary.delta_hat);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        mmin = std::min(mmin, p.mde);
        mmax = std::max(mmax, p.mde);
        qmin = std::min(qmin, p.q);
        qmax = std::max(qmax, p.q);
        resolved += p.resolved_fixed_n;
    }
    if (r.pairs.empty()) dmin = dmax = mmin = mmax = qmin = qmax = 0.0;
    std::vector<ChecklistRow> rows;
    rows.push_back({"delta_hat", "observed gap per pair",
                    "|delta| in [" + fmt4(dmin) + ", " + fmt4(dmax) + "]"});
    rows.push_back({"paired_test", "test matching the metric",
                    r.binary ? "mcnemar family + paired bootstrap (binary)"
                             : "paired bootstrap / t (graded)"});
    rows.push_back({"n", "paired prompts", std::to_string(r.n_items)});
    rows.push_back({"mde", "minimum detectable effect at current n",
                    "[" + fmt4(mmin) + ", " + fmt4(mmax) + "]"});
    rows.push_back({"q", "resolution ratio n/n_star",
                    "[" + fmt4(qmin) + ", " + fmt4(qmax) + "]; " + std::to_string(resolved) +
                        "/" + std::to_string(r.pairs.size()) + " resolved"});
    rows.push_back({"n_star_ci", "bootstrap interval on n_star",
                    opt.nstar_ci_reps > 0
                        ? "percentile 5-95, B=" + std::to_string(opt.nstar_ci_reps)
                        : "not computed"});
    rows.push_back({"multiplicity", "family-level adjustment",
                    std::string(to_string(opt.config.multiplicity)) + ", m=" +
                        std::to_string(std::max<std::size_t>(r.pairs.size(), 1))});
    rows.push_back({"per_item_raw", "raw 0/1 matrix for third-party checks",
                    r.input_kind == "matrix" ? "available" : "counts-only input"});
    return rows;
}

void finalize(DiagnoseReport& r, const DiagnoseOptions& opt) {
    r.unresolved_fixed_n = r.unresolved_family = r.unresolved_anytime =
        r.unresolved_cluster = 0;
    for (const auto& p : r.pairs) {
        r.unresolved_fixed_n += !p.resolved_fixed_n;
        r.unresolved_family += !p.resolved_family;
        r.unresolved_anytime += !p.resolved_anytime;
        r.unresolved_cluster += !p.resolved_cluster;
    }
    r.buckets = make_buckets(r.pairs);
    r.checklist = make_checklist(r, opt);
}

} // namespace

DiagnoseReport diagnose(const ScoreMatrix& m, const DiagnoseOptions& opt) {
    m.validate();
    opt.config.validate();
    const auto pairs = enumerate_pairs(m, opt.family);
    const int family_m = static_cast<int>(pairs.size());

    DiagnoseReport r;
    r.config = opt.config;
    r.config.family_size = family_m;
    r.family_convention = to_string(opt.family);
    r.seed = opt.seed;
    r.input_kind = "matrix";
    r.n_items = static_cast<long long>(m.n_items());
    r.binary = m.binary;
    r.has_clusters = m.has_clusters();

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [a, b] = pairs[pi];
        const auto s = paired::summarize_pair(m.scores[a], m.scores[b]);
        auto v = verdict_from_summary(s, m.model_names[a], m.model_names[b], family_m, opt);

        if (opt.bootstrap_reps >= 100) {
            const auto bt = sim::paired_bootstrap_test(
                m.scores[a], m.scores[b], opt.config.alpha, opt.bootstrap_reps,
                derive_rng(opt.seed, {0x70627473ULL, pi}).next_u64());
            v.p_bootstrap = bt.p_value;
        }
        if (opt.nstar_ci_reps >= 100) {
            const auto ci = sim::bootstrap_nstar_ci(
                m.scores[a], m.scores[b], opt.nstar_ci_reps, opt.config,
                derive_rng(opt.seed, {0x6e736369ULL, pi}).next_u64());
            v.nstar_ci_lo = ci.first;
            v.nstar_ci_hi = ci.second;
        }
        if (m.has_clusters() && std::isfinite(v.n_star_iid_real)) {
            std::vector<double> d(m.n_items());
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] = m.scores[a][i] - m.scores[b][i];
            const auto cs = cluster::cluster_stats(d, m.clusters);
            v.de = cs.de;
            v.n_star_cluster = cluster::cluster_required_n(v.n_star_iid_real, cs.de);
            v.resolved_cluster =
                static_cast<double>(m.n_items()) >= v.n_star_iid_real * cs.de;
        } else if (m.has_clusters()) {
            v.n_star_cluster = kInf;
            v.resolved_cluster = false;
        }
        r.pairs.push_back(std::move(v));
    }
    finalize(r, opt);
    return r;
}

DiagnoseReport diagnose_counts(std::span<const io::CountsRow> rows,
                               const DiagnoseOptions& opt) {
    opt.config.validate();
    if (rows.empty()) throw ValidationError("diagnose: empty counts fixture");
    const int family_m = static_cast<int>(rows.size());

    DiagnoseReport r;
    r.config = opt.config;
    r.config.family_size = family_m;
    r.family_convention = to_string(opt.family);
    r.seed = opt.seed;
    r.input_kind = "counts";
    r.n_items = rows.front().n;
    r.binary = true;
    r.has_clusters = false;

    for (const auto& row : rows) {
        const auto s = io::summary_from_counts(row);
        auto v = verdict_from_summary(s, row.pair_name, "", family_m, opt);
        r.pairs.push_back(std::move(v));
    }
    finalize(r, opt);
    return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

json num(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return v;
}

double num_back(const json& j) {
    if (j.is_null()) return kNaN;
    if (j.is_string()) return j.get<std::string>() == "inf" ? kInf : -kInf;
    return j.get<double>();
}

json summary_json(const PairedSummary& s) {
    return json{{"n", s.n},           {"p_a", s.p_a},
                {"p_b", s.p_b},       {"n11", s.n11},
                {"n10", s.n10},       {"n01", s.n01},
                {"n00", s.n00},       {"binary", s.binary},
                {"delta_hat", s.delta_hat}, {"rho_hat", s.rho_hat},
                {"sigma_d_hat", s.sigma_d_hat}};
}

PairedSummary summary_back(const json& j) {
    PairedSummary s;
    s.n = j.at("n").get<long long>();
    s.p_a = j.at("p_a").get<double>();
    s.p_b = j.at("p_b").get<double>();
    s.n11 = j.at("n11").get<long long>();
    s.n10 = j.at("n10").get<long long>();
    s.n01 = j.at("n01").get<long long>();
    s.n00 = j.at("n00").get<long long>();
    s.binary = j.at("binary").get<bool>();
    s.delta_hat = j.at("delta_hat").get<double>();
    s.rho_hat = j.at("rho_hat").get<double>();
    s.sigma_d_hat = j.at("sigma_d_hat").get<double>();
    return s;
}

} // namespace

std::string emit_report_json(const DiagnoseReport& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["config"] = {{"alpha", r.config.alpha},
                   {"power", r.config.power},
                   {"multiplicity", to_string(r.config.multiplicity)},
                   {"family_size", r.config.family_size}};
    j["family_convention"] = r.family_convention;
    j["seed"] = r.seed;
    j["input_kind"] = r.input_kind;
    j["n_items"] = r.n_items;
    j["binary"] = r.binary;
    j["has_clusters"] = r.has_clusters;
    j["pairs"] = json::array();
    for (const auto& p : r.pairs) {
        json pj;
        pj["model_a"] = p.model_a;
        pj["model_b"] = p.model_b;
        pj["summary"] = summary_json(p.summary);
        pj["p_chi2"] = num(p.p_chi2);
        pj["p_exact"] = num(p.p_exact);
        pj["p_midp"] = num(p.p_midp);
        pj["p_cc"] = num(p.p_cc);
        pj["p_bootstrap"] = num(p.p_bootstrap);
        pj["n_star_iid"] = num(p.n_star_iid);
        pj["n_star_iid_real"] = num(p.n_star_iid_real);
        pj["n_star_discordance"] = num(p.n_star_discordance);
        pj["n_star_cluster"] = num(p.n_star_cluster);
        pj["n_star_family"] = num(p.n_star_family);
        pj["q"] = num(p.q);
        pj["mde"] = num(p.mde);
        pj["t_stat"] = num(p.t_stat);
        pj["anytime_factor"] = num(p.anytime_factor);
        pj["de"] = num(p.de);
        pj["resolved"] = {{"fixed_n", p.resolved_fixed_n},
                          {"family", p.resolved_family},
                          {"anytime", p.resolved_anytime},
                          {"cluster", p.resolved_cluster}};
        pj["degenerate"] = p.degenerate;
        pj["nstar_ci_lo"] = num(p.nstar_ci_lo);
        pj["nstar_ci_hi"] = num(p.nstar_ci_hi);
        j["pairs"].push_back(std::move(pj));
    }
    j["family_summary"] = {{"unresolved_fixed_n", r.unresolved_fixed_n},
                           {"unresolved_family", r.unresolved_family},
                           {"unresolved_anytime", r.unresolved_anytime},
                           {"unresolved_cluster", r.unresolved_cluster}};
    j["buckets"] = json::array();
    for (const auto& b : r.buckets)
        j["buckets"].push_back({{"lo", b.lo},
                                {"hi", num(b.hi)},
                                {"pairs", b.pairs},
                                {"unresolved", b.unresolved},
                                {"r_median", num(b.r_median)},
                                {"r_worst", num(b.r_worst)}});
    j["checklist"] = json::array();
    for (const auto& c : r.checklist)
        j["checklist"].push_back(
            {{"quantity", c.quantity}, {"definition", c.definition}, {"value", c.value}});
    return j.dump(2);
}

DiagnoseReport parse_report_json(const std::string& text) {
    const json j = json::parse(text);
    DiagnoseReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.config.alpha = j.at("config").at("alpha").get<double>();
    r.config.power = j.at("config").at("power").get<double>();
    r.config.multiplicity =
        multiplicity_from_string(j.at("config").at("multiplicity").get<std::string>());
    r.config.family_size = j.at("config").at("family_size").get<int>();
    r.family_convention = j.at("family_convention").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.input_kind = j.at("input_kind").get<std::string>();
    r.n_items = j.at("n_items").get<long long>();
    r.binary = j.at("binary").get<bool>();
    r.has_clusters = j.at("has_clusters").get<bool>();
    for (const auto& pj : j.at("pairs")) {
        PairVerdict p{};
        p.model_a = pj.at("model_a").get<std::string>();
        p.model_b = pj.at("model_b").get<std::string>();
        p.summary = summary_back(pj.at("summary"));
        p.p_chi2 = num_back(pj.at("p_chi2"));
        p.p_exact = num_back(pj.at("p_exact"));
        p.p_midp = num_back(pj.at("p_midp"));
        p.p_cc = num_back(pj.at("p_cc"));
        p.p_bootstrap = num_back(pj.at("p_bootstrap"));
        p.n_star_iid = num_back(pj.at("n_star_iid"));
        p.n_star_iid_real = num_back(pj.at("n_star_iid_real"));
        p.n_star_discordance = num_back(pj.at("n_star_discordance"));
        p.n_star_cluster = num_back(pj.at("n_star_cluster"));
        p.n_star_family = num_back(pj.at("n_star_family"));
        p.q = num_back(pj.at("q"));
        p.mde = num_back(pj.at("mde"));
        p.t_stat = num_back(pj.at("t_stat"));
        p.anytime_factor = num_back(pj.at("anytime_factor"));
        p.de = num_back(pj.at("de"));
        p.resolved_fixed_n = pj.at("resolved").at("fixed_n").get<bool>();
        p.resolved_family = pj.at("resolved").at("family").get<bool>();
        p.resolved_anytime = pj.at("resolved").at("anytime").get<bool>();
        p.resolved_cluster = pj.at("resolved").at("cluster").get<bool>();
        p.degenerate = pj.at("degenerate").get<bool>();
        p.nstar_ci_lo = num_back(pj.at("nstar_ci_lo"));
        p.nstar_ci_hi = num_back(pj.at("nstar_ci_hi"));
        r.pairs.push_back(std::move(p));
    }
    r.unresolved_fixed_n = j.at("family_summary").at("unresolved_fixed_n").get<int>();
    r.unresolved_family = j.at("family_summary").at("unresolved_family").get<int>();
    r.unresolved_anytime = j.at("family_summary").at("unresolved_anytime").get<int>();
    r.unresolved_cluster = j.at("family_summary").at("unresolved_cluster").get<int>();
    for (const auto& bj : j.at("buckets")) {
        BucketRow b;
        b.lo = bj.at("lo").get<double>();
        b.hi = num_back(bj.at("hi"));
        b.pairs = bj.at("pairs").get<int>();
        b.unresolved = bj.at("unresolved").get<int>();
        b.r_median = num_back(bj.at("r_median"));
        b.r_worst = num_back(bj.at("r_worst"));
        r.buckets.push_back(b);
    }
    for (const auto& cj : j.at("checklist"))
        r.checklist.push_back({cj.at("quantity").get<std::string>(),
                               cj.at("definition").get<std::string>(),
                               cj.at("value").get<std::string>()});
    return r;
}

std::string emit_report_text(const DiagnoseReport& r) {
    std::ostringstream os;
    os << "paired resolution diagnostics  (alpha=" << fmt4(r.config.alpha)
       << ", power=" << fmt4(r.config.power) << ", multiplicity "
       << to_string(r.config.multiplicity) << ", m=" << r.config.family_size
       << ", family " << r.family_convention << ", seed " << r.seed << ")\n";
    os << "input: " << r.input_kind << ", n_items=" << r.n_items
       << (r.binary ? ", binary" : ", graded")
       << (r.has_clusters ? ", clustered" : "") << "\n\n";

    os << "pair                                     delta      q        n_star     p_chi2   p_exact  flags\n";
    for (const auto& p : r.pairs) {
        std::string name = p.model_b.empty() ? p.model_a : p.model_a + " vs " + p.model_b;
        if (name.size() > 40) name.resize(40);
        os << name << std::string(41 - name.size(), ' ');
        auto pad = [&](const std::string& s, std::size_t w) {
            os << s << (s.size() < w ? std::string(w - s.size(), ' ') : " ");
        };
        pad(fmt4(p.summary.delta_hat), 10);
        pad(fmt4(p.q), 8);
        pad(fmt4(p.n_star_iid), 10);
        pad(fmt4(p.p_chi2), 8);
        pad(fmt4(p.p_exact), 8);
        os << (p.resolved_fixed_n ? "R" : "u") << (p.resolved_family ? "R" : "u")
           << (p.resolved_anytime ? "R" : "u")
           << (r.has_clusters ? (p.resolved_cluster ? "R" : "u") : "-") << "\n";
    }
    os << "\nunresolved: fixed-n " << r.unresolved_fixed_n << "/" << r.pairs.size()
       << ", family " << r.unresolved_family << "/" << r.pairs.size() << ", anytime "
       << r.unresolved_anytime << "/" << r.pairs.size();
    if (r.has_clusters)
        os << ", cluster " << r.unresolved_cluster << "/" << r.pairs.size();
    os << "\n\n|delta| bucket   pairs  unresolved  r_median  r_worst\n";
    for (const auto& b : r.buckets) {
        std::ostringstream lbl;
        lbl << fmt4(b.lo * 100) << "-" << (std::isinf(b.hi) ? "inf" : fmt4(b.hi * 100))
            << "%";
        std::string l = lbl.str();
        os << l << std::string(l.size() < 17 ? 17 - l.size() : 1, ' ') << b.pairs
           << "      " << b.unresolved << "           " << fmt4(b.r_median) << "     "
           << fmt4(b.r_worst) << "\n";
    }
    os << "\nchecklist\n";
    for (const auto& c : r.checklist)
        os << "  " << c.quantity << ": " << c.value << "  (" << c.definition << ")\n";
    return os.str();
}

} // namespace pairdiag::report
