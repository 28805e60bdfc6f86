#pragma once

#include <cmath>
#include <vector>

#include "lcu/decomp/descriptor.hpp"

namespace lcu {

inline double chebyshev_t(long n, double x)
{
    x = std::clamp(x, -1.0, 1.0);
    return std::cos(static_cast<double>(n) * std::acos(x));
}

/// log of 2^{shift} binom(t, k).
inline double log_binom2(long t, long k, double shift)
{
    return shift * std::log(2.0) + std::lgamma(t + 1.0) - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0);
}

/// Coefficients c_l of the truncated Chebyshev expansion of x^t.
/// Even t: c_l multiplies T_{2l}, l = 0..d/2. Odd t: c_l multiplies T_{2l+1}, l = 0..(d-1)/2.
inline std::vector<double> chebyshev_power_coeffs(long t, long d)
{
    require(t >= 0, "power must be nonnegative");
    require(d >= 0 && d <= t, "degree must lie in [0, t]");
    require((t - d) % 2 == 0, "degree parity must match the power");
    std::vector<double> c;
    if (t % 2 == 0) {
        c.push_back(std::exp(log_binom2(t, t / 2, -static_cast<double>(t))));
        for (long l = 1; l <= d / 2; ++l) {
            c.push_back(std::exp(log_binom2(t, t / 2 + l, 1.0 - static_cast<double>(t))));
        }
    } else {
        for (long l = 0; l <= (d - 1) / 2; ++l) {
            c.push_back(std::exp(log_binom2(t, (t + 1) / 2 + l, 1.0 - static_cast<double>(t))));
        }
    }
    return c;
}

/// Chebyshev degree carried by coefficient l for power t.
inline long chebyshev_power_degree(long t, std::size_t l)
{
    return t % 2 == 0 ? 2 * static_cast<long>(l) : 2 * static_cast<long>(l) + 1;
}

inline double chebyshev_power_eval(long t, const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (std::size_t l = 0; l < c.size(); ++l) {
        acc += c[l] * chebyshev_t(chebyshev_power_degree(t, l), x);
    }
    return acc;
}

/// Truncation degree for x^t: the requested degree rounded up to t's parity, capped at t.
inline long matched_degree(long t, long d)
{
    if (d >= t) {
        return t;
    }
    if ((t - d) % 2 != 0) {
        ++d;
    }
    return std::min(d, t);
}

/// Degree ceil(sqrt(2 t ln(c / eps))), parity-matched.
inline long power_degree(long t, double c_over_eps)
{
    if (t == 0) {
        return 0;
    }
    const long d = static_cast<long>(std::ceil(std::sqrt(2.0 * static_cast<double>(t) * std::log(c_over_eps))));
    return matched_degree(t, d);
}

/// q(x) = e^{-t} Sum_{j<=d} (t^j/j!) p_{j,d'}(x).
struct ExpPoly {
    double t = 0.0;
    long d = 0;
    long dprime = 0;
    std::vector<double> outer;
    std::vector<std::vector<double>> inner;

    double eval(double x) const
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < outer.size(); ++j) {
            acc += outer[j] * chebyshev_power_eval(static_cast<long>(j), inner[j], x);
        }
        return acc;
    }

    /// Sum of all products outer_j * inner_{j,l}.
    double l1_norm() const
    {
        CompensatedSum s;
        for (std::size_t j = 0; j < outer.size(); ++j) {
            for (double c : inner[j]) {
                s.add(outer[j] * c);
            }
        }
        return s.value();
    }
};

/// Truncated Poisson weights e^{-t} t^j / j!, j = 0..d, in log space.
inline std::vector<double> poisson_weights(double t, long d)
{
    std::vector<double> w(static_cast<std::size_t>(d + 1));
    for (long j = 0; j <= d; ++j) {
        if (t == 0.0) {
            w[static_cast<std::size_t>(j)] = j == 0 ? 1.0 : 0.0;
        } else {
            w[static_cast<std::size_t>(j)] = std::exp(-t + static_cast<double>(j) * std::log(t) - std::lgamma(j + 1.0));
        }
    }
    return w;
}

inline ExpPoly exp_poly(double t, long d, long dprime)
{
    require(t >= 0.0 && d >= 0 && dprime >= 0, "invalid exponential polynomial parameters");
    ExpPoly q;
    q.t = t;
    q.d = d;
    q.dprime = dprime;
    q.outer = poisson_weights(t, d);
    for (long j = 0; j <= d; ++j) {
        q.inner.push_back(chebyshev_power_coeffs(j, matched_degree(j, dprime)));
    }
    return q;
}

/// Approximation of e^{-t(1-x)} on [-1,1] to error eps.
inline ExpPoly exp_poly_coeffs(double t, double eps)
{
    require(eps > 0.0 && eps < 1.0, "exp_poly_coeffs requires eps in (0,1)");
    require(t >= 0.0, "exp_poly_coeffs requires t >= 0");
    const long d = static_cast<long>(std::ceil(std::max(t * std::exp(2.0), std::log(2.0 / eps))));
    const long dp = static_cast<long>(std::ceil(std::sqrt(2.0 * static_cast<double>(d) * std::log(4.0 / eps))));
    return exp_poly(t, d, dp);
}

/// Approximation of e^{-t x^2} on [-1,1] via q_{t/2}(1 - 2x^2).
inline ExpPoly gaussian_poly(double t, double eps)
{
    require(eps > 0.0 && eps < 1.0, "gaussian_poly requires eps in (0,1)");
    require(t >= 0.0, "gaussian_poly requires t >= 0");
    const long d = static_cast<long>(std::ceil(std::max(t * std::exp(2.0) / 2.0, std::log(2.0 / eps))));
    const long dp = static_cast<long>(std::ceil(std::sqrt(2.0 * static_cast<double>(d) * std::log(4.0 / eps))));
    return exp_poly(t / 2.0, d, dp);
}

inline double gaussian_poly_eval(double t, double eps, double x)
{
    require(x >= -1.0 && x <= 1.0, "gaussian_poly_eval requires x in [-1,1]");
    return gaussian_poly(t, eps).eval(1.0 - 2.0 * x * x);
}

/// LCU over walk powers V^k of the truncated Chebyshev expansion of x^t.
inline LcuDecomposition power_walk_lcu(long t, long d, double target_error)
{
    const auto c = chebyshev_power_coeffs(t, d);
    std::vector<LcuTerm> terms;
    for (std::size_t l = 0; l < c.size(); ++l) {
        if (c[l] > 0.0) {
            terms.push_back({c[l], {WalkPower{static_cast<std::uint64_t>(chebyshev_power_degree(t, l))}, 1.0}});
        }
    }
    return LcuDecomposition(std::move(terms), target_error);
}

/// LCU over walk powers of q_{t,d,d'}, merging equal powers.
inline LcuDecomposition exp_walk_lcu(const ExpPoly& q, double target_error)
{
    std::vector<double> by_power;
    for (std::size_t j = 0; j < q.outer.size(); ++j) {
        for (std::size_t l = 0; l < q.inner[j].size(); ++l) {
            const auto k = static_cast<std::size_t>(chebyshev_power_degree(static_cast<long>(j), l));
            if (by_power.size() <= k) {
                by_power.resize(k + 1, 0.0);
            }
            by_power[k] += q.outer[j] * q.inner[j][l];
        }
    }
    std::vector<LcuTerm> terms;
    for (std::size_t k = 0; k < by_power.size(); ++k) {
        if (by_power[k] > 0.0) {
            terms.push_back({by_power[k], {WalkPower{k}, 1.0}});
        }
    }
    return LcuDecomposition(std::move(terms), target_error);
}

} // namespace lcu
