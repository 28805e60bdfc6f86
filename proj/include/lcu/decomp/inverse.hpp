#pragma once

#include <cmath>

#include "lcu/decomp/descriptor.hpp"

namespace lcu {

struct InverseLcu {
    LcuDecomposition lcu;
    double kappa = 0.0;
    long j_count = 0;
    long k_count = 0;
    double delta_y = 0.0;
    double delta_z = 0.0;
    double y_max = 0.0;
    double z_max = 0.0;
    double tau_max = 0.0;
    double sup_error = 0.0;
    int calibration_rounds = 0;
};

/// Discretized 1/x on the (y, z) grid: g(x) = (i/sqrt(2 pi)) Sum_j Dy Sum_k Dz z_k e^{-z_k^2/2} e^{-i x y_j z_k}.
struct InverseGrid {
    long j_count;
    long k_count;
    double delta_y;
    double delta_z;

    /// Closed-form sum over j (geometric series), O(K) per point.
    double eval(double x) const
    {
        double acc = 0.0;
        const double pref = delta_y * delta_z / std::sqrt(2.0 * kPi);
        for (long k = 1; k <= k_count; ++k) {
            const double z = static_cast<double>(k) * delta_z;
            const double w = pref * z * std::exp(-0.5 * z * z);
            // Sum_j 2 sin(a j) for a = x Dy z.
            const double a = x * delta_y * z;
            const double half = 0.5 * a;
            double s;
            if (std::abs(std::sin(half)) < 1e-12) {
                s = 0.0;
                for (long j = 0; j < j_count; ++j) {
                    s += std::sin(a * static_cast<double>(j));
                }
            } else {
                const double n = static_cast<double>(j_count);
                s = std::sin(half * n) * std::sin(half * (n - 1.0)) / std::sin(half);
            }
            acc += 2.0 * w * s;
        }
        return acc;
    }
};

inline std::vector<double> inverse_domain_grid(double kappa, int n_points)
{
    return sup_grid({{-1.0, -1.0 / kappa}, {1.0 / kappa, 1.0}}, n_points);
}

inline double inverse_sup_error(const InverseGrid& g, double kappa, int n_points)
{
    double worst = 0.0;
    for (double x : inverse_domain_grid(kappa, n_points)) {
        worst = std::max(worst, std::abs(1.0 / x - g.eval(x)));
    }
    return worst;
}

/// LCU of 1/x on [-1,-1/kappa] U [1/kappa,1]; calibrated until the grid sup error is at most gamma.
inline InverseLcu inverse_lcu(double kappa, double gamma, int n_points = 2000, int max_rounds = 8)
{
    require(std::isfinite(kappa) && kappa >= 1.0, "inverse_lcu requires kappa >= 1");
    require(gamma > 0.0 && gamma < 1.0, "inverse_lcu requires gamma in (0,1)");
    const double l0 = std::log(kappa / gamma);
    require(l0 > 0.0, "inverse_lcu requires kappa > gamma");
    const long j0 = static_cast<long>(std::ceil(kappa / gamma * std::sqrt(l0)));
    const long k0 = static_cast<long>(std::ceil(kappa * std::sqrt(l0)));

    InverseLcu out;
    out.kappa = kappa;
    for (int round = 0; round <= max_rounds; ++round) {
        const double lm = l0 + round * std::log(2.0);
        InverseGrid g{j0 << round, k0 << round, 0.0, 0.0};
        g.delta_y = kappa / static_cast<double>(g.j_count) * std::sqrt(2.0 * lm);
        g.delta_z = std::sqrt(2.0 * lm) / static_cast<double>(g.k_count);
        const double err = inverse_sup_error(g, kappa, n_points);
        if (err <= gamma) {
            out.j_count = g.j_count;
            out.k_count = g.k_count;
            out.delta_y = g.delta_y;
            out.delta_z = g.delta_z;
            out.y_max = static_cast<double>(g.j_count) * g.delta_y;
            out.z_max = static_cast<double>(g.k_count) * g.delta_z;
            out.tau_max = out.y_max * out.z_max;
            out.sup_error = err;
            out.calibration_rounds = round;
            break;
        }
        if (round == max_rounds) {
            throw ConvergenceError("inverse_lcu calibration did not reach the target error");
        }
    }

    std::vector<LcuTerm> terms;
    terms.reserve(static_cast<std::size_t>(out.j_count * 2 * out.k_count));
    const double pref = out.delta_y * out.delta_z / std::sqrt(2.0 * kPi);
    for (long j = 0; j < out.j_count; ++j) {
        const double y = static_cast<double>(j) * out.delta_y;
        for (long k = -out.k_count; k <= out.k_count; ++k) {
            if (k == 0) {
                continue;
            }
            const double z = static_cast<double>(k) * out.delta_z;
            const cplx phase = k > 0 ? kI : -kI;
            terms.push_back({pref * std::abs(z) * std::exp(-0.5 * z * z), {TimeEvolution{y * z}, phase}});
        }
    }
    out.lcu = LcuDecomposition(std::move(terms), gamma);
    return out;
}

} // namespace lcu
