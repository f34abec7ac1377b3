#include "pairdiag/multiplicity.hpp"

#include "pairdiag/math.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pairdiag::multiplicity {

double adjust_alpha(double alpha, int m, Multiplicity method) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("adjust_alpha: alpha must be in (0,1)");
    if (m < 1) throw std::invalid_argument("adjust_alpha: m must be >= 1");
    switch (method) {
        case Multiplicity::None: return alpha;
        case Multiplicity::Bonferroni: return alpha / m;
        case Multiplicity::Sidak: return 1.0 - std::pow(1.0 - alpha, 1.0 / m);
        case Multiplicity::Holm:
        case Multiplicity::BH:
            throw std::invalid_argument(
                "adjust_alpha: stepwise method has no per-test level; use stepwise_verdicts");
    }
    return alpha;
}

double nstar_inflation(double alpha, double power, int m, Multiplicity method) {
    if (!(power > 0.0 && power < 1.0))
        throw std::invalid_argument("nstar_inflation: power must be in (0,1)");
    if (method == Multiplicity::None || method == Multiplicity::BH) return 1.0;
    const Multiplicity eff =
        method == Multiplicity::Holm ? Multiplicity::Bonferroni : method;
    const double a_adj = adjust_alpha(alpha, m, eff);
    const double zb = math::z_upper(1.0 - power);
    const double num = math::z_upper(a_adj / 2.0) + zb;
    const double den = math::z_upper(alpha / 2.0) + zb;
    return (num / den) * (num / den);
}

std::vector<bool> stepwise_verdicts(std::span<const double> p_values, double alpha,
                                    Multiplicity method) {
    if (p_values.empty()) throw std::invalid_argument("stepwise_verdicts: empty family");
    if (method != Multiplicity::Holm && method != Multiplicity::BH)
        throw std::invalid_argument("stepwise_verdicts: method must be holm or bh");
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("stepwise_verdicts: p-value outside [0,1]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });

    std::vector<bool> reject(m, false);
    if (method == Multiplicity::Holm) {
        // Step-down: stop at the first non-rejection.
        for (std::size_t i = 0; i < m; ++i) {
            const double thr = alpha / static_cast<double>(m - i);
            if (p_values[order[i]] <= thr)
                reject[order[i]] = true;
            else
                break;
        }
    } else {
        // BH step-up: largest i with p_(i) <= alpha * i / m; reject all below.
        std::size_t cut = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (p_values[order[i]] <= alpha * static_cast<double>(i + 1) / static_cast<double>(m))
                cut = i + 1;
        for (std::size_t i = 0; i < cut; ++i) reject[order[i]] = true;
    }
    return reject;
}

} // namespace pairdiag::multiplicity
