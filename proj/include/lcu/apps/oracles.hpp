#pragma once

#include <cmath>

#include "lcu/apps/gsp.hpp"
#include "lcu/apps/qls.hpp"
#include "lcu/core/dense.hpp"
#include "lcu/core/pauli.hpp"

namespace lcu::apps {

/// Tr[O e^{-iHt} rho0 e^{iHt}].
inline double hamsim_exact(const PauliHamiltonian& h, double t, const DenseOperator& o, const StateVector& psi0)
{
    const Vector psi = evolution(eigensystem(ham_to_dense(h)), t) * psi0.amplitudes();
    return expectation(StateVector::normalize(psi), o);
}

/// Normalized projection of psi0 onto the lowest eigenspace; levels within `tol` count as degenerate.
inline StateVector ground_projection(const DenseOperator& h, const StateVector& psi0, double tol = 1e-9)
{
    const Eigensystem es = eigensystem(h);
    const double e0 = es.values.minCoeff();
    Vector out = Vector::Zero(h.dim());
    for (Index k = 0; k < es.dim(); ++k) {
        if (es.values(k) <= e0 + tol) {
            const cplx c = es.vectors.col(k).dot(psi0.amplitudes());
            out += c * es.vectors.col(k);
        }
    }
    require(out.norm() > 1e-12, "initial state has no ground-space overlap");
    return StateVector::normalize(out);
}

inline double gsp_exact(const GspProblem& p, const DenseOperator& o)
{
    return expectation(ground_projection(ham_to_dense(p.hamiltonian), p.initial_state), o);
}

/// |<v0|psi0>|^2 with v0 the ground projection.
inline double ground_overlap2(const DenseOperator& h, const StateVector& psi0)
{
    return std::norm(ground_projection(h, psi0).amplitudes().dot(psi0.amplitudes()));
}

/// H^{-1} b, unnormalized.
inline Vector qls_solution(const QlsProblem& p)
{
    const Eigensystem es = eigensystem(ham_to_dense(p.hamiltonian));
    return apply_function(es, [](double x) { return 1.0 / x; }) * p.b.amplitudes();
}

inline double qls_exact(const QlsProblem& p, const DenseOperator& o)
{
    return expectation(StateVector::normalize(qls_solution(p)), o);
}

/// |<a|b>| for normalized states.
inline double fidelity(const Vector& a, const Vector& b) { return std::abs(a.dot(b)); }

/// min over global phase of ||a - e^{i phi} b||.
inline double phase_aligned_distance(const Vector& a, const Vector& b)
{
    const cplx ov = b.dot(a);
    const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0, 0.0);
    return (a - phase * b).norm();
}

} // namespace lcu::apps
