#pragma once

#include <cmath>

#include "lcu/decomp/taylor.hpp"
#include "lcu/estimator/estimator.hpp"

namespace lcu::apps {

struct HamsimResult {
    EstimateReport report;
    long segments = 0;
    int order = 0;
    double gamma = 0.0;
    double segment_l1 = 0.0;
};

/// Segment schedule: r = max(1, ceil(beta^2 t^2)) and the smallest K meeting eps/(6||O||).
struct HamsimPlan {
    long segments;
    int order;
    double gamma;
};

inline HamsimPlan hamsim_plan(const PauliHamiltonian& h, double t, double norm_o, double epsilon)
{
    require(std::isfinite(t), "evolution time must be finite");
    const double bt = h.beta() * std::abs(t);
    const long r = std::max(1L, static_cast<long>(std::ceil(bt * bt)));
    const double gamma = epsilon / (6.0 * norm_o);
    return {r, taylor_order(bt / static_cast<double>(r), r, gamma), gamma};
}

/// Estimate Tr[O e^{-iHt} rho0 e^{iHt}] by sampling products of Taylor segments.
inline HamsimResult hamsim_estimate(const PauliHamiltonian& h, double t, const Observable& o, const StateVector& psi0,
    const EstimatorConfig& cfg, std::vector<SampleRecord>* trace = nullptr)
{
    cfg.validate();
    require(o.dim() == h.dim() && psi0.dim() == h.dim(), "dimension mismatch between Hamiltonian, observable and state");
    const HamsimPlan plan = hamsim_plan(h, t, o.norm(), cfg.epsilon);
    SegmentProductSampler sampler(taylor_segment(h, t, plan.segments, plan.order), psi0);
    HamsimResult out;
    out.segments = plan.segments;
    out.order = plan.order;
    out.gamma = plan.gamma;
    out.segment_l1 = sampler.segment().l1_norm();
    out.report = unitary_lcu_estimate(sampler, o, cfg, trace);
    return out;
}

} // namespace lcu::apps
