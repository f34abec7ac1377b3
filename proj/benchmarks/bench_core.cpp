#include "pairdiag/eprocess.hpp"
#include "pairdiag/mcnemar.hpp"
#include "pairdiag/paired.hpp"
#include "pairdiag/rng.hpp"
#include "pairdiag/report.hpp"
#include "pairdiag/simulate.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace pairdiag;

static void BM_RequiredN(benchmark::State& state) {
    const double sigma = std::sqrt(paired::bernoulli_diff_variance(0.65, 0.60, 0.30));
    for (auto _ : state) benchmark::DoNotOptimize(paired::required_n(0.05, sigma, {}));
}
BENCHMARK(BM_RequiredN);

static void BM_McnemarExact(benchmark::State& state) {
    const long long m = state.range(0);
    const long long b = m / 2 + m / 20, c = m - b;
    for (auto _ : state) benchmark::DoNotOptimize(mcnemar::mcnemar_exact(b, c));
    state.SetComplexityN(m);
}
BENCHMARK(BM_McnemarExact)->Range(64, 1 << 17)->Complexity();

static void BM_EprocessUpdate(benchmark::State& state) {
    eprocess::EProcess ep(eprocess::MixtureGrid::uniform98());
    Rng rng(1);
    for (auto _ : state) {
        ep.update(rng.u01() < 0.5 ? eprocess::Sign::AWins : eprocess::Sign::BWins);
        benchmark::DoNotOptimize(ep.log_e_upper_bound());
    }
}
BENCHMARK(BM_EprocessUpdate);

static void BM_PairedBootstrapTest(benchmark::State& state) {
    sim::GeneratorSpec spec;
    spec.p = 0.7;
    spec.delta = 0.04;
    spec.rho_z = 0.4;
    spec.n = state.range(0);
    spec.seed = 42;
    const auto sp = sim::gen_paired_bernoulli(spec);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sim::paired_bootstrap_test(sp.first, sp.second, 0.05, 500, ++seed));
    state.SetItemsProcessed(state.iterations() * spec.n * 500);
}
BENCHMARK(BM_PairedBootstrapTest)->Arg(500)->Arg(5000);

static void BM_Diagnose9Pairs(benchmark::State& state) {
    // Counts-route verdicts for a nine-pair family.
    std::vector<io::CountsRow> rows;
    for (int i = 0; i < 9; ++i) {
        io::CountsRow r;
        r.pair_name = "p" + std::to_string(i);
        r.n = 12032;
        r.p_a = 0.70 - 0.01 * i;
        r.p_b = r.p_a - 0.002 * (i + 1);
        r.b = 300 + 40 * i;
        r.c = 300 + 40 * i - std::llround(r.n * (r.p_a - r.p_b));
        rows.push_back(r);
    }
    report::DiagnoseOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(report::diagnose_counts(rows, opt));
}
BENCHMARK(BM_Diagnose9Pairs);

BENCHMARK_MAIN();
