#include "pairdiag/eprocess.hpp"

#include "pairdiag/rng.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace pairdiag;
using testutil::close;

TEST_CASE("mixture grids") {
    const auto u = eprocess::MixtureGrid::uniform98();
    CHECK(u.thetas.size() == 98);
    for (double w : u.weights) CHECK(close(w, 1.0 / 98.0, 1e-15));
    CHECK_NOTHROW(eprocess::MixtureGrid::two_point().validate());
    const auto b = eprocess::MixtureGrid::beta22(200);
    CHECK(b.thetas.size() == 200);
    CHECK_NOTHROW(b.validate());
    SUBCASE("invalid support points rejected") {
        eprocess::MixtureGrid bad;
        bad.thetas = {0.5};
        bad.weights = {1.0};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad.thetas = {1.0};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_CASE("fresh state has e = 1") {
    eprocess::EProcess ep(eprocess::MixtureGrid::uniform98());
    CHECK(close(ep.log_e(), 0.0, 1e-12));
}

TEST_CASE("closed-form checks on the default grid") {
    const auto g = eprocess::MixtureGrid::uniform98();
    SUBCASE("one discordant pair each way") {
        // sum w * 4 theta (1-theta) = 0.67 exactly on this grid.
        CHECK(close(std::exp(eprocess::log_e_at(g, 1, 1)), 0.67, 1e-12));
    }
    SUBCASE("ten straight wins, value frozen from an independent evaluation") {
        CHECK(close(eprocess::log_e_at(g, 10, 0), 4.498064749581, 1e-9));
        CHECK(close(std::exp(eprocess::log_e_at(g, 10, 0)), 89.8430940666, 1e-6));
    }
    SUBCASE("balanced counts stay at or below one") {
        for (long long k = 1; k <= 100; ++k) CHECK(eprocess::log_e_at(g, k, k) <= 1e-12);
    }
    SUBCASE("symmetric grid is swap invariant") {
        CHECK(close(eprocess::log_e_at(g, 17, 4), eprocess::log_e_at(g, 4, 17), 0.0,
                    1e-12));
    }
}

TEST_CASE("e depends only on the counts, not the order") {
    const auto g = eprocess::MixtureGrid::uniform98();
    eprocess::EProcess ep1(g), ep2(g);
    std::vector<int> signs = {1, 1, -1, 1, -1, -1, 1, 1, 1, -1, 1};
    for (int s : signs) ep1.update(s > 0 ? eprocess::Sign::AWins : eprocess::Sign::BWins);
    std::sort(signs.begin(), signs.end());
    for (int s : signs) ep2.update(s > 0 ? eprocess::Sign::AWins : eprocess::Sign::BWins);
    CHECK(ep1.log_e() == ep2.log_e()); // bit-equal under permutation
    CHECK(ep1.b() == ep2.b());
}

TEST_CASE("log-space accumulation stays finite at a million updates") {
    const auto g = eprocess::MixtureGrid::uniform98();
    CHECK(std::isfinite(eprocess::log_e_at(g, 500000, 500000)));
    CHECK(std::isfinite(eprocess::log_e_at(g, 1000000, 0)));
}

TEST_CASE("eprocess_test") {
    const auto g = eprocess::MixtureGrid::uniform98();
    SUBCASE("empty sequence is not rejected") {
        const auto r = eprocess::eprocess_test({}, 0.05, g);
        CHECK_FALSE(r.rejected);
        CHECK(r.trajectory.empty());
    }
    SUBCASE("alternating signs never cross at alpha = 0.05") {
        std::vector<int> signs(10000);
        for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = i % 2 == 0 ? 1 : -1;
        const auto r = eprocess::eprocess_test(signs, 0.05, g);
        CHECK_FALSE(r.rejected);
        CHECK(r.trajectory.size() == signs.size());
        CHECK(*std::max_element(r.trajectory.begin(), r.trajectory.end()) < 0.5);
    }
    SUBCASE("a strong run crosses and stops") {
        std::vector<int> signs(100, 1);
        const auto r = eprocess::eprocess_test(signs, 0.05, g);
        CHECK(r.rejected);
        CHECK(r.stop_index > 0);
        CHECK(r.stop_index < 30);
        CHECK(static_cast<std::size_t>(r.stop_index) == r.trajectory.size());
    }
    SUBCASE("trajectory CSV header") {
        std::vector<int> signs = {1, -1, 1};
        const auto r = eprocess::eprocess_test(signs, 0.05, g);
        CHECK(eprocess::trajectory_to_csv(r, 0.05).rfind("n,log_e,threshold\n", 0) == 0);
    }
}

TEST_CASE("supermartingale sanity under fair-coin streams") {
    // Pr(sup_n e_n >= 20) <= 0.05 plus Monte Carlo slack, per Ville.
    const auto g = eprocess::MixtureGrid::uniform98();
    const int trials = 2000, len = 5000;
    const double thr = std::log(20.0);
    int crossings = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derive_rng(97, {static_cast<std::uint64_t>(t)});
        eprocess::EProcess ep(g);
        bool crossed = false;
        for (int i = 0; i < len && !crossed; ++i) {
            ep.update(rng.u01() < 0.5 ? eprocess::Sign::AWins : eprocess::Sign::BWins);
            if (ep.log_e_upper_bound() >= thr && ep.log_e() >= thr) crossed = true;
        }
        crossings += crossed;
    }
    const double rate = static_cast<double>(crossings) / trials;
    CHECK(rate <= 0.05 + 2.0 * testutil::mcse(0.05, trials));
}

TEST_CASE("threshold inflation") {
    SUBCASE("degenerate horizon cannot cross") {
        CHECK(std::isinf(eprocess::threshold_inflation_at(100, 0.05,
                                                          eprocess::MixtureGrid::uniform98(),
                                                          0.01)));
    }
    SUBCASE("factor exceeds one at realistic horizons") {
        const double f = eprocess::threshold_inflation_at(12032, 0.05);
        CHECK(f > 1.5);
        CHECK(f < 3.0);
    }
    SUBCASE("grows with the horizon at fixed discordance rate") {
        const auto g = eprocess::MixtureGrid::uniform98();
        const double small = eprocess::threshold_inflation_at(2000, 0.05, g, 0.05);
        const double large = eprocess::threshold_inflation_at(12032, 0.05, g, 0.05);
        CHECK(small < large);
    }
}

TEST_CASE("calibration runs deterministically at small sizes") {
    const auto g = eprocess::MixtureGrid::uniform98();
    const auto c1 = eprocess::calibrate_eprocess(0.6, 0.6, 0.06, 3000, 120, 42, g, {});
    const auto c2 = eprocess::calibrate_eprocess(0.6, 0.6, 0.06, 3000, 120, 42, g, {});
    CHECK(c1.type1 == c2.type1);
    CHECK(c1.mean_stop_ratio == c2.mean_stop_ratio);
    CHECK(c1.reject_rate > 0.9);
    CHECK(c1.type1 <= 0.05 + 2.0 * testutil::mcse(0.05, 120));
    CHECK(c1.n_star_ref > 0.0);
}
