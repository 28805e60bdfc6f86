#pragma once

#include "lcu/decomp/inverse.hpp"
#include "lcu/estimator/estimator.hpp"

namespace lcu::apps {

struct QlsProblem {
    PauliHamiltonian hamiltonian;
    double kappa = 1.0;
    StateVector b;

    void validate() const
    {
        require(kappa >= 1.0, "condition number bound must be at least 1");
        require(b.is_normalized(), "right-hand side must be normalized");
        require(b.dim() == hamiltonian.dim(), "state and Hamiltonian dimensions differ");
    }
};

struct QlsResult {
    EstimateReport report;
    double gamma = 0.0;
    long j_count = 0;
    long k_count = 0;
    double y_max = 0.0;
    double z_max = 0.0;
    double scalar_sup_error = 0.0;
    std::size_t n_terms = 0;
};

/// <x|O|x> for x proportional to H^{-1} b, with gamma = eps/(18 ||O||) and l* = 1.
inline QlsResult qls_estimate(const QlsProblem& p, const Observable& o, const EstimatorConfig& cfg,
    std::vector<SampleRecord>* trace = nullptr)
{
    cfg.validate();
    p.validate();
    QlsResult out;
    out.gamma = cfg.epsilon / (18.0 * o.norm());
    const InverseLcu inv = inverse_lcu(p.kappa, out.gamma);
    out.j_count = inv.j_count;
    out.k_count = inv.k_count;
    out.y_max = inv.y_max;
    out.z_max = inv.z_max;
    out.scalar_sup_error = inv.sup_error;
    out.n_terms = inv.lcu.size();
    const Eigensystem es = eigensystem(ham_to_dense(p.hamiltonian));
    const PreparedLcu sampler = PreparedLcu::on_spectrum(inv.lcu, p.b, es);
    EstimatorConfig c = cfg;
    c.ell_star = 1.0;
    out.report = single_ancilla_lcu(sampler, o, c, trace);
    out.report.tau_max = inv.tau_max;
    return out;
}

} // namespace lcu::apps
