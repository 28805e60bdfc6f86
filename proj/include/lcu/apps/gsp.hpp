#pragma once

#include <cmath>

#include "lcu/decomp/gaussian.hpp"
#include "lcu/estimator/estimator.hpp"
#include "lcu/estimator/robustness.hpp"

namespace lcu::apps {

struct GspProblem {
    PauliHamiltonian hamiltonian;
    double gap = 0.0;
    double eta = 0.0;
    double e0 = 0.0;
    double eps_g = 0.0;
    StateVector initial_state;

    void validate() const
    {
        require(gap > 0.0, "gap lower bound must be positive");
        require(eta > 0.0 && eta <= 1.0 / std::sqrt(2.0) + 1e-15, "overlap lower bound must lie in (0, 1/sqrt2]");
        require(eps_g >= 0.0, "energy precision must be nonnegative");
        require(initial_state.is_normalized(), "initial state must be normalized");
        require(initial_state.dim() == hamiltonian.dim(), "state and Hamiltonian dimensions differ");
    }
};

/// Shifted and rescaled Hamiltonian plus the Gaussian filter schedule.
struct GspPlan {
    PauliHamiltonian normalized;
    double scale = 1.0;
    double gap = 0.0;
    double t = 0.0;
    double gamma = 0.0;
};

/// H <- (H - (E0 - eps_g) I) / beta_shifted; gap rescaled by the same factor.
inline GspPlan gsp_normalize(const GspProblem& p)
{
    p.validate();
    GspPlan plan;
    const PauliHamiltonian shifted = p.hamiltonian.shifted(-(p.e0 - p.eps_g));
    plan.scale = shifted.beta();
    require(plan.scale > 0.0, "shifted Hamiltonian vanishes");
    plan.normalized = shifted.scaled(1.0 / plan.scale);
    plan.gap = p.gap / plan.scale;
    return plan;
}

/// Filter time (1/(2 gap^2)) log(arg) + 1 with the log clamped at 0.
inline double gsp_filter_time(double gap, double log_argument)
{
    return std::max(0.0, std::log(log_argument)) / (2.0 * gap * gap) + 1.0;
}

inline GspPlan gsp_plan(const GspProblem& p, double norm_o, double epsilon)
{
    GspPlan plan = gsp_normalize(p);
    const double eta2 = p.eta * p.eta;
    plan.t = gsp_filter_time(plan.gap, 8.0 * norm_o * norm_o * (1.0 - eta2) / (epsilon * epsilon * eta2));
    plan.gamma = epsilon * eta2 / (30.0 * norm_o);
    return plan;
}

struct GspResult {
    EstimateReport report;
    GspPlan plan;
    int m = 0;
    double delta_t = 0.0;
    double perturbation = 0.0;
};

/// Ground-state property estimation with the Gaussian filter e^{-tH^2} and l* = eta^2.
inline GspResult gsp_estimate(const GspProblem& p, const Observable& o, const EstimatorConfig& cfg,
    std::vector<SampleRecord>* trace = nullptr)
{
    cfg.validate();
    GspResult out;
    out.plan = gsp_plan(p, o.norm(), cfg.epsilon);
    const GaussianLcu g = gaussian_lcu(out.plan.t, out.plan.gamma);
    out.m = g.m;
    out.delta_t = g.delta_t;
    const Eigensystem es = eigensystem(ham_to_dense(out.plan.normalized));
    const PreparedLcu sampler = PreparedLcu::on_spectrum(g.lcu, p.initial_state, es);
    EstimatorConfig c = cfg;
    c.ell_star = p.eta * p.eta;
    out.report = single_ancilla_lcu(sampler, o, c, trace);
    out.report.tau_max = g.tau_max;
    return out;
}

/// Same pipeline with every U_j replaced by a perturbed U_j at the imperfect-unitary tolerance.
/// LCU error eps l*/(27 ||h||_1 ||f||) and max ||U_j - U_j'|| <= that divided by ||c||_1, with ||f|| <= 1.
inline GspResult gsp_estimate_imperfect(const GspProblem& p, const Observable& o, const EstimatorConfig& cfg)
{
    cfg.validate();
    GspResult out;
    out.plan = gsp_plan(p, o.norm(), cfg.epsilon);
    const double ell_star = p.eta * p.eta;
    out.plan.gamma = cfg.epsilon * ell_star / (27.0 * o.norm());
    const GaussianLcu g = gaussian_lcu(out.plan.t, out.plan.gamma);
    out.m = g.m;
    out.delta_t = g.delta_t;
    out.perturbation = out.plan.gamma / g.lcu.l1_norm();
    const Eigensystem es = eigensystem(ham_to_dense(out.plan.normalized));
    std::vector<DenseOperator> noisy;
    noisy.reserve(g.lcu.size());
    for (std::size_t j = 0; j < g.lcu.size(); ++j) {
        Stream rng(cfg.master_seed, 3, j);
        noisy.push_back(perturb_unitary(realize(g.lcu.terms()[j].unitary, es), out.perturbation, rng));
    }
    const PreparedLcu sampler = PreparedLcu::on_unitaries(g.lcu, p.initial_state, noisy);
    EstimatorConfig c = cfg;
    c.ell_star = ell_star;
    out.report = single_ancilla_lcu(sampler, o, c);
    out.report.tau_max = g.tau_max;
    return out;
}

} // namespace lcu::apps
