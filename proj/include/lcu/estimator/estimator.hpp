#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "lcu/core/parallel.hpp"
#include "lcu/estimator/observable.hpp"
#include "lcu/estimator/samplers.hpp"

namespace lcu {

struct EstimatorConfig {
    double epsilon = 0.1;
    double delta = 0.1;
    Mode mode = Mode::expectation;
    std::optional<long> repetitions_override;
    std::uint64_t master_seed = 0;
    double ell_star = 1.0;
    unsigned threads = 1;

    void validate() const
    {
        require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
        require(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
        require(ell_star > 0.0, "ell_star must be positive");
        require(!repetitions_override || *repetitions_override >= 1, "repetition override must be positive");
    }
};

struct SampleRecord {
    long index = 0;
    std::pair<std::uint64_t, std::uint64_t> term_ids;
    double value = 0.0;
    double cost = 0.0;
};

/// Outcome of one run of the sampling loop.
struct PhaseResult {
    double mu = 0.0;
    long repetitions = 0;
    double value_mean = 0.0;
    double value_std = 0.0;
    double scaled_std = 0.0;
    double cost_mean = 0.0;
    double cost_std = 0.0;
    std::vector<SampleRecord> records;
};

struct EstimateReport {
    double mu = 0.0;
    double ell_tilde = 1.0;
    double ratio = 0.0;
    long T_used = 0;
    long T_mu = 0;
    long T_norm = 0;
    long T_required = 0;
    double tau_max = 0.0;
    double avg_cost = 0.0;
    double empirical_avg_cost = 0.0;
    double empirical_std = 0.0;
    std::uint64_t seed = 0;
    double l1_norm = 0.0;
    double norm_o = 0.0;
    double ell_star = 1.0;
    bool normalized = false;
};

/// Experiment ids feeding the counter-based seed derivation.
inline constexpr std::uint64_t kNumeratorExperiment = 1;
inline constexpr std::uint64_t kNormExperiment = 2;

/// ceil(8 ||O||^2 ln(2/delta) ||c||_1^4 / eps^2).
inline long required_repetitions(double norm_o, double c1, double epsilon, double delta)
{
    require(norm_o > 0.0 && c1 > 0.0 && epsilon > 0.0, "required_repetitions needs positive inputs");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
    const double t = 8.0 * norm_o * norm_o * std::log(2.0 / delta) * std::pow(c1, 4) / (epsilon * epsilon);
    require(t < 9.0e18, "required repetitions overflow");
    return static_cast<long>(std::ceil(t));
}

/// One circuit run: draw V1, V2 i.i.d. and return the outcome of X (x) O.
template <class Sampler>
SampleRecord run_circuit_sample(const Sampler& s, const Observable& o, Mode mode, Stream& rng)
{
    Vector buf1, buf2, tmp, scratch(s.dim());
    DrawInfo i1, i2;
    const auto a = s.draw(rng, i1, buf1, tmp);
    const auto b = s.draw(rng, i2, buf2, tmp);
    SampleRecord r;
    r.term_ids = {i1.id, i2.id};
    r.value = o.sample(a, b, mode, rng, scratch);
    r.cost = i1.cost + i2.cost;
    return r;
}

/// Algorithm-1 loop: mu = ||c||_1^2 scale / T * Sum_i value_i with per-index streams.
template <class Sampler>
PhaseResult expectation_observable(const Sampler& s, const Observable& o, long repetitions, Mode mode, std::uint64_t master_seed,
    std::uint64_t experiment, unsigned threads = 1, bool keep_records = false)
{
    require(repetitions >= 1, "at least one repetition required");
    require(o.dim() == s.dim(), "observable and state dimensions differ");
    constexpr long chunk = 2048;
    const long n_chunks = (repetitions + chunk - 1) / chunk;
    struct Acc {
        CompensatedSum v, v2, c, c2;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(n_chunks));
    PhaseResult out;
    if (keep_records) {
        out.records.resize(static_cast<std::size_t>(repetitions));
    }
    parallel_for(static_cast<std::size_t>(n_chunks), threads, [&](std::size_t ci) {
        Vector buf1(s.dim()), buf2(s.dim()), tmp(s.dim()), scratch(s.dim());
        Acc& a = acc[ci];
        const long begin = static_cast<long>(ci) * chunk;
        const long end = std::min(repetitions, begin + chunk);
        for (long i = begin; i < end; ++i) {
            Stream rng(master_seed, experiment, static_cast<std::uint64_t>(i));
            DrawInfo i1, i2;
            const auto v1 = s.draw(rng, i1, buf1, tmp);
            const auto v2 = s.draw(rng, i2, buf2, tmp);
            const double value = o.sample(v1, v2, mode, rng, scratch);
            const double cost = i1.cost + i2.cost;
            a.v.add(value);
            a.v2.add(value * value);
            a.c.add(cost);
            a.c2.add(cost * cost);
            if (keep_records) {
                out.records[static_cast<std::size_t>(i)] = {i, {i1.id, i2.id}, value, cost};
            }
        }
    });
    Acc total;
    for (const auto& a : acc) {
        total.v.add(a.v);
        total.v2.add(a.v2);
        total.c.add(a.c);
        total.c2.add(a.c2);
    }
    const double n = static_cast<double>(repetitions);
    const double l1 = s.l1_norm();
    out.repetitions = repetitions;
    out.value_mean = total.v.value() / n;
    out.mu = l1 * l1 * o.scale() * out.value_mean;
    const double var = n > 1 ? std::max(0.0, (total.v2.value() - n * out.value_mean * out.value_mean) / (n - 1.0)) : 0.0;
    out.value_std = std::sqrt(var);
    out.scaled_std = l1 * l1 * o.scale() * out.value_std;
    out.cost_mean = total.c.value() / (2.0 * n);
    const double cvar = n > 1 ? std::max(0.0, (total.c2.value() / 4.0 - n * out.cost_mean * out.cost_mean) / (n - 1.0)) : 0.0;
    out.cost_std = std::sqrt(cvar);
    return out;
}

namespace detail {

template <class Sampler>
void fill_costs(EstimateReport& r, const Sampler& s, const PhaseResult& p)
{
    r.tau_max = s.tau_max();
    r.avg_cost = s.average_cost();
    r.empirical_avg_cost = p.cost_mean;
    r.empirical_std = p.scaled_std;
    r.l1_norm = s.l1_norm();
}

} // namespace detail

/// Ratio estimate: numerator with O at precision eps l*/3, normalization with O = I at precision eps l*/(3 max(||O||,1)).
template <class Sampler>
EstimateReport single_ancilla_lcu(const Sampler& s, const Observable& o, const EstimatorConfig& cfg,
    std::vector<SampleRecord>* trace = nullptr)
{
    cfg.validate();
    EstimateReport r;
    r.seed = cfg.master_seed;
    r.norm_o = o.norm();
    r.ell_star = cfg.ell_star;
    r.normalized = true;
    const double norm_eff = std::max(r.norm_o, 1.0);
    const double eps_mu = cfg.epsilon * cfg.ell_star / 3.0;
    const double eps_norm = cfg.epsilon * cfg.ell_star / (3.0 * norm_eff);
    const long t_mu = required_repetitions(r.norm_o, s.l1_norm(), eps_mu, cfg.delta);
    const long t_norm = required_repetitions(1.0, s.l1_norm(), eps_norm, cfg.delta);
    r.T_required = t_mu + t_norm;
    r.T_mu = cfg.repetitions_override.value_or(t_mu);
    r.T_norm = cfg.repetitions_override.value_or(t_norm);
    r.T_used = r.T_mu + r.T_norm;

    PhaseResult num = expectation_observable(s, o, r.T_mu, cfg.mode, cfg.master_seed, kNumeratorExperiment, cfg.threads, trace != nullptr);
    const Observable ident = Observable::identity(s.dim());
    const PhaseResult den = expectation_observable(s, ident, r.T_norm, cfg.mode, cfg.master_seed, kNormExperiment, cfg.threads, false);
    r.mu = num.mu;
    r.ell_tilde = den.mu;
    detail::fill_costs(r, s, num);
    if (trace) {
        *trace = std::move(num.records);
    }
    if (!(r.ell_tilde > eps_norm)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "norm underflow: estimated normalization " << r.ell_tilde << " is not above " << eps_norm
            << "; the lower bound ell_star=" << cfg.ell_star << " is invalid or T is too small";
        throw NormUnderflowError(msg.str());
    }
    r.ratio = r.mu / r.ell_tilde;
    return r;
}

/// Numerator phase alone, for unitary targets where the normalization is exactly 1.
template <class Sampler>
EstimateReport unitary_lcu_estimate(const Sampler& s, const Observable& o, const EstimatorConfig& cfg,
    std::vector<SampleRecord>* trace = nullptr)
{
    cfg.validate();
    EstimateReport r;
    r.seed = cfg.master_seed;
    r.norm_o = o.norm();
    r.ell_star = 1.0;
    r.T_required = required_repetitions(r.norm_o, s.l1_norm(), cfg.epsilon, cfg.delta);
    r.T_mu = cfg.repetitions_override.value_or(r.T_required);
    r.T_used = r.T_mu;
    PhaseResult num = expectation_observable(s, o, r.T_mu, cfg.mode, cfg.master_seed, kNumeratorExperiment, cfg.threads, trace != nullptr);
    r.mu = num.mu;
    r.ell_tilde = 1.0;
    r.ratio = r.mu;
    detail::fill_costs(r, s, num);
    if (trace) {
        *trace = std::move(num.records);
    }
    return r;
}

/// Exact E[outcome] over all (V1, V2) pairs: Sum p_j1 p_j2 Re<U_j2 psi|O|U_j1 psi>, times ||c||_1^2.
inline double exhaustive_mean(const PreparedLcu& s, const DenseOperator& o)
{
    const std::size_t n = s.size();
    Matrix outs(s.dim(), static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        outs.col(static_cast<Index>(j)) = s.output(j);
    }
    const Matrix gram = outs.adjoint() * o.matrix() * outs;
    CompensatedSum acc;
    for (std::size_t j1 = 0; j1 < n; ++j1) {
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            acc.add(s.probability(j1) * s.probability(j2) * gram(static_cast<Index>(j2), static_cast<Index>(j1)).real());
        }
    }
    return s.l1_norm() * s.l1_norm() * acc.value();
}

/// total = T (2 <tau> + tau_psi0).
struct CostSummary {
    double tau_max = 0.0;
    double avg_cost = 0.0;
    long repetitions = 0;
    double total = 0.0;
};

inline CostSummary cost_summary(const EstimateReport& r, double state_cost = 0.0)
{
    return {r.tau_max, r.avg_cost, r.T_used, static_cast<double>(r.T_used) * (2.0 * r.avg_cost + state_cost)};
}

} // namespace lcu
