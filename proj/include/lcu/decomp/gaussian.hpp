#pragma once

#include <cmath>

#include "lcu/decomp/descriptor.hpp"

namespace lcu {

struct GaussianLcu {
    LcuDecomposition lcu;
    int m = 0;
    double delta_t = 0.0;
    double t = 0.0;
    double tau_max = 0.0;
};

/// Truncation point of the Gaussian quadrature: sqrt(2 ln(4/gamma)) meets the gamma bound; the literal
/// sqrt(ln(4/gamma)) leaves a tail of order sqrt(gamma).
enum class GaussianTruncation { corrected, literal };

/// LCU of e^{-t H^2} over time evolutions e^{-i j delta_t sqrt(2t) H}, j = -M..M, for unit-norm H.
inline GaussianLcu gaussian_lcu(double t, double gamma, GaussianTruncation cut = GaussianTruncation::corrected)
{
    require(std::isfinite(t) && t >= 1.0, "gaussian_lcu requires t >= 1");
    require(gamma > 0.0 && gamma < 1.0, "gaussian_lcu requires gamma in (0,1)");
    const double l5 = std::log(5.0 / gamma);
    const double l4 = (cut == GaussianTruncation::corrected ? 2.0 : 1.0) * std::log(4.0 / gamma);
    GaussianLcu g;
    g.t = t;
    g.m = static_cast<int>(std::ceil(std::sqrt(2.0) * (std::sqrt(t) + std::sqrt(l5)) * std::sqrt(l4)));
    g.delta_t = 1.0 / (std::sqrt(2.0 * t) + std::sqrt(2.0 * l5));
    const double step = std::sqrt(2.0 * t);
    const double norm = g.delta_t / std::sqrt(2.0 * kPi);
    std::vector<LcuTerm> terms;
    terms.reserve(static_cast<std::size_t>(2 * g.m + 1));
    for (int j = -g.m; j <= g.m; ++j) {
        const double jd = static_cast<double>(j) * g.delta_t;
        terms.push_back({norm * std::exp(-0.5 * jd * jd), {TimeEvolution{static_cast<double>(j) * g.delta_t * step}, 1.0}});
    }
    g.tau_max = static_cast<double>(g.m) * g.delta_t * step;
    g.lcu = LcuDecomposition(std::move(terms), gamma);
    return g;
}

} // namespace lcu
