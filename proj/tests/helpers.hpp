#pragma once

#include "pairdiag/csv.hpp"
#include "pairdiag/rng.hpp"
#include "pairdiag/types.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

namespace testutil {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(PAIRDIAG_FIXTURE_DIR) / name;
}

inline bool close(double a, double b, double atol, double rtol = 0.0) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::fabs(a - b) <= atol + rtol * std::max(std::fabs(a), std::fabs(b));
}

// Binomial MC standard error of an empirical rate.
inline double mcse(double rate, int trials) {
    return std::sqrt(std::max(rate * (1.0 - rate), 1e-12) / trials);
}

inline std::vector<pairdiag::io::CountsRow> mmlupro_rows() {
    return pairdiag::io::load_counts_fixture(fixture("mmlupro_adjacent.csv"));
}

inline std::vector<pairdiag::io::CountsRow> oll_rows() {
    return pairdiag::io::load_counts_fixture(fixture("oll_close_pairs.csv"));
}

} // namespace testutil
