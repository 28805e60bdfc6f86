#pragma once

#include <cmath>

#include "lcu/core/dense.hpp"
#include "lcu/core/random.hpp"

namespace lcu {

/// Random Hermitian matrix with unit spectral norm.
inline DenseOperator random_unit_hermitian(Index dim, Stream& rng)
{
    Matrix a(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            a(i, j) = cplx(rng.normal(), rng.normal());
        }
    }
    const DenseOperator g = DenseOperator::hermitian(0.5 * (a + a.adjoint()));
    return DenseOperator::hermitian(g.matrix() / hermitian_norm(g));
}

/// U' = e^{i eps G} U with G random unit-norm Hermitian and eps the largest value keeping ||U - U'|| <= delta_u.
inline DenseOperator perturb_unitary(const DenseOperator& u, double delta_u, Stream& rng)
{
    require(u.is_unitary(), "perturb_unitary requires a unitary");
    require(delta_u > 0.0 && delta_u < 0.5, "perturbation size must lie in (0, 0.5)");
    const Eigensystem g = eigensystem(random_unit_hermitian(u.dim(), rng));
    const auto distance = [&](double eps) {
        const Matrix e = apply_function(g, [eps](double x) { return std::exp(cplx(0.0, eps * x)); });
        return spectral_norm((e - Matrix::Identity(u.dim(), u.dim())) * u.matrix());
    };
    double lo = 0.0;
    double hi = 1.5 * 2.0 * std::asin(std::min(1.0, delta_u / 2.0));
    while (distance(hi) <= delta_u) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (distance(mid) <= delta_u ? lo : hi) = mid;
    }
    const Matrix e = apply_function(g, [lo](double x) { return std::exp(cplx(0.0, lo * x)); });
    return DenseOperator::unitary(e * u.matrix());
}

/// Left and right sides of |Tr[O P rho P^+] - Tr[O Q rho Q^+]| <= 3 ||O|| ||P|| gamma.
struct DistanceBound {
    double lhs;
    double rhs;
};

inline DistanceBound expectation_distance(const Matrix& p, const Matrix& q, const DenseOperator& rho, const DenseOperator& o, double gamma)
{
    const cplx a = (o.matrix() * p * rho.matrix() * p.adjoint()).trace();
    const cplx b = (o.matrix() * q * rho.matrix() * q.adjoint()).trace();
    return {std::abs(a.real() - b.real()), 3.0 * hermitian_norm(o) * spectral_norm(p) * gamma};
}

} // namespace lcu
