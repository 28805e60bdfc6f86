#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lcu/core/types.hpp"

namespace lcu {

inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed for sample `index` of experiment `experiment`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t experiment, std::uint64_t index)
{
    return mix64(mix64(mix64(master) ^ experiment) ^ index);
}

/// SplitMix64 stream; satisfies UniformRandomBitGenerator.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed)
        : state_(seed)
    {
    }

    Stream(std::uint64_t master, std::uint64_t experiment, std::uint64_t index)
        : state_(derive_seed(master, experiment, index))
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

    /// Standard normal via Box-Muller.
    double normal()
    {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

private:
    std::uint64_t state_;
};

/// Cumulative table for drawing indices with probability proportional to nonnegative weights.
class DiscreteSampler {
public:
    DiscreteSampler() = default;

    explicit DiscreteSampler(const std::vector<double>& weights)
    {
        require(!weights.empty(), "discrete sampler needs weights");
        cdf_.resize(weights.size());
        prob_.resize(weights.size());
        CompensatedSum s;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            require(weights[i] >= 0.0, "weights must be nonnegative");
            s.add(weights[i]);
            cdf_[i] = s.value();
        }
        total_ = s.value();
        require(total_ > 0.0, "weights sum to zero");
        for (std::size_t i = 0; i < weights.size(); ++i) {
            cdf_[i] /= total_;
            prob_[i] = weights[i] / total_;
        }
        cdf_.back() = 1.0;
    }

    std::size_t operator()(Stream& rng) const
    {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }

    double probability(std::size_t i) const { return prob_[i]; }
    std::size_t size() const { return cdf_.size(); }
    double total() const { return total_; }

private:
    std::vector<double> cdf_;
    std::vector<double> prob_;
    double total_ = 0.0;
};

} // namespace lcu
