#include "cli_app.hpp"

#include "pairdiag/cluster.hpp"
#include "pairdiag/csv.hpp"
#include "pairdiag/eprocess.hpp"
#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"
#include "pairdiag/mcnemar.hpp"
#include "pairdiag/multiplicity.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/report.hpp"
#include "pairdiag/rng.hpp"
#include "pairdiag/shortcut.hpp"
#include "pairdiag/simulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace pairdiag::cli {

namespace {

using json = nlohmann::json;

struct GlobalOpts {
    TestConfig cfg;
    std::string family = "adjacent";
    std::string multiplicity = "none";
    std::uint64_t seed = 42;
    bool json_out = false;
};

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        std::ostringstream os;
        os << static_cast<long long>(v);
        return os.str();
    }
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

json jnum(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return v;
}

void write_file_or_throw(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    f << content;
}

int cmd_diagnose(const GlobalOpts& g, const std::string& path, const std::string& format,
                 int nstar_ci, int boot_reps, std::ostream& out) {
    report::DiagnoseOptions opt;
    opt.config = g.cfg;
    opt.family = report::family_from_string(g.family);
    opt.seed = g.seed;
    opt.nstar_ci_reps = nstar_ci;
    opt.bootstrap_reps = boot_reps;

    io::InputKind kind;
    if (format == "matrix")
        kind = io::InputKind::Matrix;
    else if (format == "counts")
        kind = io::InputKind::Counts;
    else
        kind = io::detect_input_kind(path);

    report::DiagnoseReport rep;
    if (kind == io::InputKind::Matrix) {
        const auto m = io::load_score_matrix(path);
        rep = report::diagnose(m, opt);
    } else {
        const auto rows = io::load_counts_fixture(path);
        rep = report::diagnose_counts(rows, opt);
    }
    out << (g.json_out ? report::emit_report_json(rep) : report::emit_report_text(rep))
        << "\n";
    return 0;
}

int cmd_required_n(const GlobalOpts& g, std::optional<double> p_a,
                   std::optional<double> p_b, std::optional<double> rho,
                   std::optional<double> mean, std::optional<double> sd,
                   std::ostream& out) {
    double n_real;
    json extra;
    if (mean && sd) {
        n_real = paired::required_n_real(*mean, *sd, g.cfg);
        extra = {{"route", "paired-t"}, {"mean_diff", *mean}, {"sd_diff", *sd}};
    } else if (p_a && p_b) {
        const double r = rho.value_or(0.0);
        const double sigma = std::sqrt(paired::bernoulli_diff_variance(*p_a, *p_b, r));
        n_real = paired::required_n_real(*p_a - *p_b, sigma, g.cfg);
        extra = {{"route", "paired-binary"},
                 {"p_a", *p_a},
                 {"p_b", *p_b},
                 {"rho", r},
                 {"sigma_d", sigma}};
    } else {
        throw CLI::ValidationError("required-n",
                                   "need either positional p_a p_b or --mean/--sd");
    }
    const double n_star = std::isfinite(n_real) ? std::ceil(n_real) : n_real;
    if (g.json_out) {
        extra["n_star"] = jnum(n_star);
        extra["n_star_real"] = jnum(n_real);
        extra["alpha"] = g.cfg.alpha;
        extra["power"] = g.cfg.power;
        extra["multiplicity"] = to_string(g.cfg.multiplicity);
        extra["family_size"] = g.cfg.family_size;
        out << extra.dump(2) << "\n";
    } else if (std::isfinite(n_star)) {
        out << static_cast<long long>(n_star) << "\n";
    } else {
        out << "inf (delta = 0: gap is below any finite resolution)\n";
    }
    return 0;
}

int cmd_mde(const GlobalOpts& g, double n, std::optional<double> p_a,
            std::optional<double> p_b, std::optional<double> rho,
            std::optional<double> sd, std::ostream& out) {
    double sigma;
    if (sd)
        sigma = *sd;
    else if (p_a && p_b)
        sigma = std::sqrt(paired::bernoulli_diff_variance(*p_a, *p_b, rho.value_or(0.0)));
    else
        throw CLI::ValidationError("mde", "need --sd or --p-a/--p-b [--rho]");
    const double v = paired::mde(n, sigma, g.cfg);
    if (g.json_out)
        out << json{{"mde", v}, {"n", n}, {"sigma_d", sigma}}.dump(2) << "\n";
    else
        out << fmt(v) << "\n";
    return 0;
}

int cmd_mcnemar(const GlobalOpts& g, long long b, long long c,
                std::optional<long long> n, std::ostream& out) {
    const double p_chi2 = mcnemar::mcnemar_chi2(b, c);
    const double p_exact = mcnemar::mcnemar_exact(b, c);
    const double p_midp = mcnemar::mcnemar_midp(b, c);
    const double p_cc = mcnemar::mcnemar_cc(b, c);
    json j = {{"b", b},
              {"c", c},
              {"p_chi2", p_chi2},
              {"p_exact", p_exact},
              {"p_midp", p_midp},
              {"p_cc", p_cc}};
    if (n) {
        j["n"] = *n;
        j["n_star"] = jnum(mcnemar::required_n_mcnemar(b, c, *n, g.cfg));
    }
    if (g.json_out) {
        out << j.dump(2) << "\n";
    } else {
        out << "p_chi2=" << fmt(p_chi2) << " p_exact=" << fmt(p_exact)
            << " p_midp=" << fmt(p_midp) << " p_cc=" << fmt(p_cc);
        if (n) out << " n_star=" << fmt(j["n_star"].is_string() ? INFINITY
                                                                : j["n_star"].get<double>());
        out << "\n";
    }
    return 0;
}

int cmd_shortcut_audit(const GlobalOpts& g, std::vector<double> ps,
                       std::vector<double> rhos, std::vector<double> deltas,
                       const std::string& csv_path, std::ostream& out) {
    if (ps.empty()) ps = {0.5, 0.65, 0.8};
    if (rhos.empty()) rhos = {0.0, 0.3, 0.5};
    if (deltas.empty()) deltas = {0.005, 0.01, 0.02, 0.05, 0.1, 0.2};
    const auto cells = shortcut::lemma_numeric_audit(ps, rhos, deltas, g.cfg);
    const std::string csv = shortcut::audit_to_csv(cells);
    if (!csv_path.empty()) write_file_or_throw(csv_path, csv);
    if (g.json_out) {
        json arr = json::array();
        for (const auto& c : cells) {
            if (c.skipped) continue;
            arr.push_back({{"p", c.p},
                           {"rho", c.rho},
                           {"delta", c.delta},
                           {"ratio", c.ratio},
                           {"deviation", c.deviation},
                           {"c_pred", c.c_pred}});
        }
        out << arr.dump(2) << "\n";
    } else if (csv_path.empty()) {
        out << csv;
    } else {
        out << "audit written to " << csv_path << " (" << cells.size() << " cells)\n";
    }
    return 0;
}

int cmd_cluster(const GlobalOpts& g, const std::string& path, int boot, bool do_loso,
                const std::string& relabel, int relabel_k, const std::string& csv_path,
                std::ostream& out) {
    auto m = io::load_score_matrix(path);
    if (!relabel.empty()) {
        cluster::RelabelOptions ro;
        ro.k = relabel_k;
        ro.seed = g.seed;
        if (relabel == "random")
            ro.scheme = cluster::RelabelScheme::Random;
        else if (relabel == "difficulty-quartiles")
            ro.scheme = cluster::RelabelScheme::DifficultyQuartiles;
        else if (relabel == "split-half")
            ro.scheme = cluster::RelabelScheme::SplitHalf;
        else
            throw CLI::ValidationError("cluster", "unknown relabel scheme: " + relabel);
        m = cluster::relabel_clusters(m, ro);
    }
    const auto pairs =
        report::enumerate_pairs(m, report::family_from_string(g.family));
    const auto res = cluster::cluster_bootstrap_verdicts(m, pairs, boot, g.seed, g.cfg);
    const std::string csv = cluster::cluster_report_to_csv(res);
    if (!csv_path.empty()) write_file_or_throw(csv_path, csv);

    if (g.json_out) {
        json j;
        j["seed"] = g.seed;
        j["bootstrap_reps"] = boot;
        j["pairs"] = json::array();
        for (const auto& p : res.pairs)
            j["pairs"].push_back({{"pair", p.model_a + " vs " + p.model_b},
                                  {"icc", {{"pt", p.icc_pt}, {"lo", p.icc_lo}, {"hi", p.icc_hi}}},
                                  {"de", {{"pt", p.de_pt}, {"lo", p.de_lo}, {"hi", p.de_hi}}},
                                  {"nstar_cluster",
                                   {{"pt", jnum(p.n_star_pt)},
                                    {"lo", jnum(p.n_star_lo)},
                                    {"hi", jnum(p.n_star_hi)}}},
                                  {"pr_unresolved", p.pr_unresolved}});
        j["count_probability"] = res.count_probability;
        if (do_loso) j["loso_unresolved"] = cluster::loso(m, pairs, g.cfg);
        out << j.dump(2) << "\n";
    } else {
        out << "seed=" << g.seed << " bootstrap_reps=" << boot << "\n" << csv;
        if (do_loso) {
            out << "loso_unresolved:";
            for (int c : cluster::loso(m, pairs, g.cfg)) out << ' ' << c;
            out << "\n";
        }
    }
    return 0;
}

int cmd_eprocess(const GlobalOpts& g, const std::string& stream_path,
                 std::optional<long long> b, std::optional<long long> c,
                 const std::string& grid_name, const std::string& traj_path,
                 std::ostream& out) {
    const auto grid = eprocess::MixtureGrid::from_name(grid_name);
    if (!stream_path.empty()) {
        std::ifstream f(stream_path);
        if (!f) throw ValidationError("cannot open stream file: " + stream_path);
        std::vector<int> signs;
        std::string tok;
        while (f >> tok) {
            if (tok == "+1" || tok == "1" || tok == "A" || tok == "a")
                signs.push_back(+1);
            else if (tok == "-1" || tok == "B" || tok == "b")
                signs.push_back(-1);
            else
                throw ValidationError("stream token '" + tok + "' is not a sign (+1/-1/A/B)");
        }
        const auto res = eprocess::eprocess_test(signs, g.cfg.alpha, grid);
        if (!traj_path.empty())
            write_file_or_throw(traj_path, eprocess::trajectory_to_csv(res, g.cfg.alpha));
        if (g.json_out) {
            out << json{{"rejected", res.rejected},
                        {"stop_index", res.rejected ? json(res.stop_index) : json(nullptr)},
                        {"signs", signs.size()},
                        {"log_e_final",
                         res.trajectory.empty() ? 0.0 : res.trajectory.back()}}
                       .dump(2)
                << "\n";
        } else {
            out << (res.rejected ? "rejected at sign index " + std::to_string(res.stop_index)
                                 : "not rejected")
                << ", final log_e="
                << fmt(res.trajectory.empty() ? 0.0 : res.trajectory.back()) << "\n";
        }
        return 0;
    }
    if (!b || !c)
        throw CLI::ValidationError("eprocess", "need --stream FILE or both --b and --c");
    const double log_e = eprocess::log_e_at(grid, *b, *c);
    const bool crossed = log_e >= std::log(1.0 / g.cfg.alpha);
    if (g.json_out)
        out << json{{"b", *b}, {"c", *c}, {"log_e", log_e}, {"e", std::exp(log_e)},
                    {"crossed", crossed}}
                   .dump(2)
            << "\n";
    else
        out << "log_e=" << fmt(log_e) << " e=" << fmt(std::exp(log_e))
            << (crossed ? " (crossed 1/alpha)" : "") << "\n";
    return 0;
}

int cmd_calibrate(const GlobalOpts& g, std::vector<double> p_set,
                  std::vector<double> rz_set, long long n, int trials, int boot_reps,
                  const std::string& csv_path, std::ostream& out) {
    if (p_set.empty()) p_set = {0.5, 0.7, 0.9};
    if (rz_set.empty()) rz_set = {0.0, 0.4, 0.8};
    const auto cells =
        sim::calibration_grid(p_set, rz_set, n, trials, g.seed, g.cfg, boot_reps);
    const std::string csv = sim::calibration_to_csv(cells);
    if (!csv_path.empty()) write_file_or_throw(csv_path, csv);
    if (g.json_out) {
        json j;
        j["seed"] = g.seed;
        j["trials"] = trials;
        j["cells"] = json::array();
        for (const auto& cell : cells)
            j["cells"].push_back({{"variant", cell.variant},
                                  {"p", cell.p},
                                  {"rho_z", cell.rho_z},
                                  {"n", cell.n},
                                  {"type1", cell.type1},
                                  {"power", cell.power},
                                  {"type1_mcse", cell.type1_mcse},
                                  {"power_mcse", cell.power_mcse},
                                  {"tuned_delta", cell.tuned_delta}});
        out << j.dump(2) << "\n";
    } else {
        out << "seed=" << g.seed << " trials=" << trials << "\n" << csv;
    }
    return 0;
}

int cmd_gen(const GlobalOpts& g, double p, double delta, double rho_z, long long n,
            bool graded, double a_shape, double b_shape, double shift, int clusters,
            const std::string& out_path, std::ostream& out) {
    sim::ScorePair pair;
    if (graded) {
        pair = sim::gen_paired_graded(a_shape, b_shape, rho_z, shift, n, g.seed);
    } else {
        sim::GeneratorSpec spec;
        spec.p = p;
        spec.delta = delta;
        spec.rho_z = rho_z;
        spec.n = n;
        spec.seed = g.seed;
        pair = sim::gen_paired_bernoulli(spec);
    }
    ScoreMatrix m;
    m.model_names = {"model_a", "model_b"};
    m.scores = {pair.first, pair.second};
    m.binary = !graded;
    m.items.resize(n);
    for (long long i = 0; i < n; ++i) m.items[i] = "item" + std::to_string(i);
    if (clusters > 1) {
        Rng rng = derive_rng(g.seed, {0x67636c75ULL});
        m.clusters.resize(n);
        for (long long i = 0; i < n; ++i)
            m.clusters[i] = "c" + std::to_string(rng.uniform_index(clusters));
    }
    const std::string csv = io::matrix_to_csv(m);
    if (out_path.empty())
        out << csv;
    else {
        write_file_or_throw(out_path, csv);
        out << "wrote " << n << " items to " << out_path << " (seed " << g.seed << ")\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"paired-evaluation resolution diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--alpha", g.cfg.alpha, "two-sided type-I level")
        ->check(CLI::Range(1e-9, 0.999999));
    app.add_option("--power", g.cfg.power, "target power 1-beta")
        ->check(CLI::Range(1e-9, 0.999999));
    app.add_option("--family", g.family, "pair family convention")
        ->check(CLI::IsMember({"adjacent", "all-pairs"}));
    app.add_option("--multiplicity", g.multiplicity, "family adjustment")
        ->check(CLI::IsMember({"none", "bonferroni", "sidak", "holm", "bh"}));
    app.add_option("--seed", g.seed, "master RNG seed (echoed in output)");
    app.add_flag("--json", g.json_out, "machine-readable JSON output at full precision");

    // diagnose
    auto* sd = app.add_subcommand("diagnose", "score matrix or counts fixture -> report");
    std::string d_path, d_format = "auto";
    int d_nstar_ci = 0, d_boot = 1000;
    sd->add_option("file", d_path, "input CSV")->required();
    sd->add_option("--format", d_format, "matrix|counts|auto")
        ->check(CLI::IsMember({"auto", "matrix", "counts"}));
    sd->add_option("--nstar-ci", d_nstar_ci, "bootstrap reps for the N* CI (0 = off)");
    sd->add_option("--boot", d_boot, "paired bootstrap test reps");

    // required-n
    auto* sr = app.add_subcommand("required-n", "required paired count at a gap");
    std::vector<double> r_pos;
    double r_rho = 0.0, r_mean = 0.0, r_sd = 0.0;
    bool r_has_rho = false, r_has_mean = false, r_has_sd = false;
    sr->add_option("proportions", r_pos, "p_a p_b (binary route)")->expected(0, 2);
    sr->add_option("--rho", r_rho, "within-pair correlation");
    sr->add_option("--mean", r_mean, "mean paired difference (graded route)");
    sr->add_option("--sd", r_sd, "sd of paired differences (graded route)");

    // mde
    auto* sm = app.add_subcommand("mde", "minimum detectable effect at size n");
    double m_n = 0;
    double m_pa = 0, m_pb = 0, m_rho = 0, m_sd = 0;
    sm->add_option("n", m_n, "paired sample size")->required();
    sm->add_option("--p-a", m_pa, "marginal accuracy of model A");
    sm->add_option("--p-b", m_pb, "marginal accuracy of model B");
    sm->add_option("--rho", m_rho, "within-pair correlation");
    sm->add_option("--sd", m_sd, "sd of paired differences");

    // mcnemar
    auto* sq = app.add_subcommand("mcnemar", "four p-value variants from (b, c)");
    long long q_b = 0, q_c = 0, q_n = 0;
    sq->add_option("b", q_b, "discordant count A-correct/B-wrong")->required();
    sq->add_option("c", q_c, "discordant count A-wrong/B-correct")->required();
    sq->add_option("n", q_n, "total paired items (adds required-N)");

    // shortcut-audit
    auto* sa = app.add_subcommand("shortcut-audit", "shortcut vs paired required-N grid");
    std::vector<double> a_p, a_rho, a_delta;
    std::string a_csv;
    sa->add_option("--p", a_p, "midpoint accuracies");
    sa->add_option("--rho", a_rho, "correlations");
    sa->add_option("--delta", a_delta, "gaps");
    sa->add_option("--csv", a_csv, "write audit table CSV here");

    // cluster
    auto* sc = app.add_subcommand("cluster", "cluster bootstrap / LOSO / relabel");
    std::string c_path, c_relabel, c_csv;
    int c_boot = 1000, c_k = 14;
    bool c_loso = false;
    sc->add_option("file", c_path, "score matrix CSV with cluster column")->required();
    sc->add_option("--bootstrap", c_boot, "cluster bootstrap replicates");
    sc->add_flag("--loso", c_loso, "leave-one-cluster-out recomputation");
    sc->add_option("--relabel", c_relabel, "random|difficulty-quartiles|split-half");
    sc->add_option("--k", c_k, "cluster count for random relabel");
    sc->add_option("--csv", c_csv, "write CI table CSV here");

    // eprocess
    auto* se = app.add_subcommand("eprocess", "mixture e-process on discordant signs");
    std::string e_stream, e_grid = "uniform", e_traj;
    long long e_b = -1, e_c = -1;
    se->add_option("--stream", e_stream, "file of signs (+1/-1/A/B per token)");
    se->add_option("--b", e_b, "accumulated A-wins");
    se->add_option("--c", e_c, "accumulated B-wins");
    se->add_option("--grid", e_grid, "uniform|two-point|beta22")
        ->check(CLI::IsMember({"uniform", "two-point", "beta22"}));
    se->add_option("--trajectory", e_traj, "write (n, log_e, threshold) CSV here");

    // calibrate
    auto* sk = app.add_subcommand("calibrate", "five-variant Monte Carlo calibration grid");
    std::vector<double> k_p, k_rz;
    long long k_n = 500;
    int k_trials = 1500, k_boot = 500;
    std::string k_csv;
    sk->add_option("--p-set", k_p, "base accuracies");
    sk->add_option("--rho-z-set", k_rz, "latent correlations");
    sk->add_option("--n", k_n, "items per trial");
    sk->add_option("--trials", k_trials, "Monte Carlo trials per cell");
    sk->add_option("--boot", k_boot, "bootstrap reps inside each trial");
    sk->add_option("--csv", k_csv, "write grid CSV here");

    // gen
    auto* sg = app.add_subcommand("gen", "synthetic paired fixtures");
    double g_p = 0.65, g_delta = 0.05, g_rz = 0.3, g_ashape = 4.0, g_bshape = 2.0,
           g_shift = 0.0;
    long long g_n = 1000;
    int g_clusters = 0;
    bool g_graded = false;
    std::string g_out;
    sg->add_option("--p", g_p, "base marginal (binary route)");
    sg->add_option("--delta", g_delta, "true gap");
    sg->add_option("--rho-z", g_rz, "latent-Gaussian correlation");
    sg->add_option("--n", g_n, "items");
    sg->add_flag("--graded", g_graded, "Beta-marginal graded scores");
    sg->add_option("--alpha-shape", g_ashape, "Beta alpha (graded)");
    sg->add_option("--beta-shape", g_bshape, "Beta beta (graded)");
    sg->add_option("--shift", g_shift, "mean shift of model A (graded)");
    sg->add_option("--clusters", g_clusters, "random cluster labels (0 = none)");
    sg->add_option("--out", g_out, "output CSV path (stdout when omitted)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        g.cfg.multiplicity = multiplicity_from_string(g.multiplicity);
        if (g.cfg.multiplicity != Multiplicity::None && g.cfg.family_size == 1)
            g.cfg.family_size = 1; // family size set per command where known
        g.cfg.validate();

        if (sd->parsed()) return cmd_diagnose(g, d_path, d_format, d_nstar_ci, d_boot, out);
        if (sr->parsed()) {
            r_has_rho = sr->count("--rho") > 0;
            r_has_mean = sr->count("--mean") > 0;
            r_has_sd = sr->count("--sd") > 0;
            std::optional<double> pa, pb, rho, mean, sdv;
            if (r_pos.size() == 2) {
                pa = r_pos[0];
                pb = r_pos[1];
            } else if (!r_pos.empty()) {
                throw CLI::ValidationError("required-n", "give both p_a and p_b");
            }
            if (r_has_rho) rho = r_rho;
            if (r_has_mean) mean = r_mean;
            if (r_has_sd) sdv = r_sd;
            return cmd_required_n(g, pa, pb, rho, mean, sdv, out);
        }
        if (sm->parsed()) {
            std::optional<double> pa, pb, rho, sdv;
            if (sm->count("--p-a")) pa = m_pa;
            if (sm->count("--p-b")) pb = m_pb;
            if (sm->count("--rho")) rho = m_rho;
            if (sm->count("--sd")) sdv = m_sd;
            return cmd_mde(g, m_n, pa, pb, rho, sdv, out);
        }
        if (sq->parsed())
            return cmd_mcnemar(g, q_b, q_c,
                               sq->count("n") ? std::optional<long long>(q_n) : std::nullopt,
                               out);
        if (sa->parsed()) return cmd_shortcut_audit(g, a_p, a_rho, a_delta, a_csv, out);
        if (sc->parsed())
            return cmd_cluster(g, c_path, c_boot, c_loso, c_relabel, c_k, c_csv, out);
        if (se->parsed())
            return cmd_eprocess(g, e_stream,
                                e_b >= 0 ? std::optional<long long>(e_b) : std::nullopt,
                                e_c >= 0 ? std::optional<long long>(e_c) : std::nullopt,
                                e_grid, e_traj, out);
        if (sk->parsed())
            return cmd_calibrate(g, k_p, k_rz, k_n, k_trials, k_boot, k_csv, out);
        if (sg->parsed())
            return cmd_gen(g, g_p, g_delta, g_rz, g_n, g_graded, g_ashape, g_bshape,
                           g_shift, g_clusters, g_out, out);
        err << "usage error: no subcommand\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "data error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneracyError& e) {
        err << "degenerate input: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace pairdiag::cli
