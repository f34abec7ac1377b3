#include "pairdiag/shortcut.hpp"

#include "pairdiag/errors.hpp"
#include "pairdiag/math.hpp"
#include "pairdiag/paired.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pairdiag::shortcut {

double cohens_h(double p1, double p2) {
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
        throw std::invalid_argument("cohens_h: proportions must lie in [0,1]");
    return 2.0 * std::asin(std::sqrt(p1)) - 2.0 * std::asin(std::sqrt(p2));
}

ShortcutSizes shortcut_n(double p1, double p2, double rho, const TestConfig& cfg) {
    cfg.validate();
    if (p1 == p2) throw DegeneracyError("shortcut_n: equal proportions give h = 0");
    const auto [lo, hi] = paired::admissible_rho_bounds(p1, p2);
    if (rho < lo - 1e-12 || rho > hi + 1e-12)
        throw std::invalid_argument("shortcut_n: rho outside admissible interval");
    const double h = cohens_h(p1, p2);
    const double zsum = math::z_upper(cfg.alpha / 2.0) + math::z_upper(1.0 - cfg.power);
    const double k_over_h2 = zsum * zsum / (h * h);
    ShortcutSizes s;
    s.n_per_arm_real = k_over_h2;
    s.n_h_real = (1.0 - rho) * k_over_h2;
    s.n_per_arm = static_cast<long long>(std::ceil(s.n_per_arm_real));
    s.n_h = static_cast<long long>(std::ceil(s.n_h_real));
    return s;
}

double lemma_constant(double p, double rho) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("lemma_constant: p must be interior");
    if (rho >= 1.0 - 1e-12)
        throw std::invalid_argument("lemma_constant: unbounded as rho -> 1");
    const double u = p * (1.0 - p);
    const double one_m_2p = 1.0 - 2.0 * p;
    const double term1 = (1.0 + rho) * one_m_2p * one_m_2p / (16.0 * (1.0 - rho) * u * u);
    const double term2 = 1.0 / (6.0 * u);
    return 0.5 * std::fabs(term1 - term2);
}

double admissible_delta_star(double p, double rho, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("admissible_delta_star: epsilon must be in (0, 1/2)");
    const double c = lemma_constant(p, rho);
    if (c == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(epsilon / c);
}

std::vector<AuditCell> lemma_numeric_audit(std::span<const double> p_grid,
                                           std::span<const double> rho_grid,
                                           std::span<const double> delta_grid,
                                           const TestConfig& cfg) {
    cfg.validate();
    std::vector<AuditCell> out;
    out.reserve(p_grid.size() * rho_grid.size() * delta_grid.size());
    for (double p : p_grid) {
        for (double rho : rho_grid) {
            for (double delta : delta_grid) {
                AuditCell cell;
                cell.p = p;
                cell.rho = rho;
                cell.delta = delta;
                const double pa = p + delta / 2.0, pb = p - delta / 2.0;
                bool ok = pa > 0.0 && pa < 1.0 && pb > 0.0 && pb < 1.0 && delta != 0.0;
                if (ok) {
                    const auto [lo, hi] = paired::admissible_rho_bounds(pa, pb);
                    ok = rho >= lo && rho <= hi && rho < 1.0;
                }
                if (!ok) {
                    cell.skipped = true;
                    out.push_back(cell);
                    continue;
                }
                const auto sizes = shortcut_n(pa, pb, rho, cfg);
                const double sigma = std::sqrt(paired::bernoulli_diff_variance(pa, pb, rho));
                const double n_star = paired::required_n_real(delta, sigma, cfg);
                cell.ratio = sizes.n_h_real / n_star;
                cell.deviation = std::fabs(cell.ratio - 0.5);
                cell.c_pred = lemma_constant(p, rho);
                out.push_back(cell);
            }
        }
    }
    return out;
}

std::string audit_to_csv(const std::vector<AuditCell>& cells) {
    std::ostringstream os;
    os.precision(12);
    os << "p,rho,delta,ratio,deviation,c_pred\n";
    for (const auto& c : cells) {
        if (c.skipped) continue;
        os << c.p << ',' << c.rho << ',' << c.delta << ',' << c.ratio << ','
           << c.deviation << ',' << c.c_pred << '\n';
    }
    return os.str();
}

} // namespace pairdiag::shortcut
