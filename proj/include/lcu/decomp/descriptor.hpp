#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "lcu/core/dense.hpp"
#include "lcu/core/pauli.hpp"

namespace lcu {

/// e^{-i duration H}.
struct TimeEvolution {
    double duration = 0.0;
};

/// (-i)^k P_{l1} ... P_{lk} e^{-i angle P_m}, indices into a PauliHamiltonian.
struct PauliProductRotation {
    std::vector<std::uint32_t> paulis;
    std::uint32_t rotation_index = 0;
    double angle = 0.0;
};

/// V^exponent for a walk unitary V.
struct WalkPower {
    std::uint64_t exponent = 0;
};

struct IdentityUnitary { };

/// A unitary family member with a global unit phase.
struct UnitaryDescriptor {
    std::variant<IdentityUnitary, TimeEvolution, PauliProductRotation, WalkPower> kind;
    cplx phase{1.0, 0.0};
};

struct LcuTerm {
    double coefficient;
    UnitaryDescriptor unitary;
};

/// Positive coefficients over unitary descriptors.
class LcuDecomposition {
public:
    LcuDecomposition() = default;

    LcuDecomposition(std::vector<LcuTerm> terms, double target_error)
        : terms_(std::move(terms))
        , target_error_(target_error)
    {
        require(!terms_.empty(), "LCU needs at least one term");
        CompensatedSum s;
        for (const auto& t : terms_) {
            require(t.coefficient > 0.0 && std::isfinite(t.coefficient), "LCU coefficients must be positive and finite");
            require(std::abs(std::abs(t.unitary.phase) - 1.0) <= 1e-12, "descriptor phase must have unit modulus");
            s.add(t.coefficient);
        }
        l1_ = s.value();
    }

    const std::vector<LcuTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double l1_norm() const { return l1_; }
    double target_error() const { return target_error_; }

private:
    std::vector<LcuTerm> terms_;
    double l1_ = 0.0;
    double target_error_ = 0.0;
};

/// Walk unitary supplied as realization context.
struct WalkContext {
    const DenseOperator& v;
};

namespace detail {

inline Matrix rotation_product(const PauliProductRotation& r, const PauliHamiltonian& h)
{
    const auto& terms = h.terms();
    require(r.rotation_index < terms.size(), "rotation index out of range");
    const Index d = h.dim();
    Matrix m = PauliString::ipow(-static_cast<int>(r.paulis.size())) * Matrix::Identity(d, d);
    for (auto l : r.paulis) {
        require(l < terms.size(), "Pauli index out of range");
        m = m * terms[l].pauli.dense();
    }
    const Matrix pm = terms[r.rotation_index].pauli.dense();
    const Matrix rot = std::cos(r.angle) * Matrix::Identity(d, d) - kI * std::sin(r.angle) * pm;
    return m * rot;
}

} // namespace detail

inline DenseOperator realize(const UnitaryDescriptor& u, const Eigensystem& h)
{
    const Index d = h.dim();
    if (std::holds_alternative<IdentityUnitary>(u.kind)) {
        return DenseOperator::unitary(u.phase * Matrix::Identity(d, d));
    }
    if (const auto* te = std::get_if<TimeEvolution>(&u.kind)) {
        return DenseOperator::unitary(u.phase * evolution(h, te->duration));
    }
    throw PreconditionError("descriptor kind needs a Pauli or walk context");
}

inline DenseOperator realize(const UnitaryDescriptor& u, const DenseOperator& hamiltonian)
{
    require(hamiltonian.is_hermitian(), "Hamiltonian context must be Hermitian");
    if (std::holds_alternative<IdentityUnitary>(u.kind)) {
        return DenseOperator::unitary(u.phase * Matrix::Identity(hamiltonian.dim(), hamiltonian.dim()));
    }
    return realize(u, eigensystem(hamiltonian));
}

inline DenseOperator realize(const UnitaryDescriptor& u, const PauliHamiltonian& h)
{
    if (const auto* r = std::get_if<PauliProductRotation>(&u.kind)) {
        return DenseOperator::unitary(u.phase * detail::rotation_product(*r, h));
    }
    if (std::holds_alternative<WalkPower>(u.kind)) {
        throw PreconditionError("walk power needs a walk context");
    }
    return realize(u, ham_to_dense(h));
}

inline DenseOperator realize(const UnitaryDescriptor& u, const WalkContext& w)
{
    require(w.v.is_unitary(), "walk context must be unitary");
    const Index d = w.v.dim();
    if (std::holds_alternative<IdentityUnitary>(u.kind)) {
        return DenseOperator::unitary(u.phase * Matrix::Identity(d, d));
    }
    if (const auto* wp = std::get_if<WalkPower>(&u.kind)) {
        Matrix m = Matrix::Identity(d, d);
        Matrix base = w.v.matrix();
        for (std::uint64_t e = wp->exponent; e > 0; e >>= 1) {
            if (e & 1) {
                m = m * base;
            }
            if (e > 1) {
                base = base * base;
            }
        }
        return DenseOperator::unitary(u.phase * m);
    }
    throw PreconditionError("descriptor kind needs a Hamiltonian context");
}

/// Sum_j c_j realize(U_j).
template <class Context>
Matrix realize_sum(const LcuDecomposition& lcu, const Context& ctx)
{
    Matrix acc;
    for (const auto& t : lcu.terms()) {
        const DenseOperator u = realize(t.unitary, ctx);
        if (acc.size() == 0) {
            acc = Matrix::Zero(u.dim(), u.dim());
        }
        acc += t.coefficient * u.matrix();
    }
    return acc;
}

/// Scalar function x -> Sum_j c_j phase_j e^{-i x d_j} of an LCU over time evolutions.
inline cplx lcu_scalar(const LcuDecomposition& lcu, double x)
{
    cplx acc = 0.0;
    for (const auto& t : lcu.terms()) {
        if (std::holds_alternative<IdentityUnitary>(t.unitary.kind)) {
            acc += t.coefficient * t.unitary.phase;
        } else if (const auto* te = std::get_if<TimeEvolution>(&t.unitary.kind)) {
            acc += t.coefficient * t.unitary.phase * std::exp(cplx(0.0, -x * te->duration));
        } else {
            throw PreconditionError("lcu_scalar needs time-evolution terms");
        }
    }
    return acc;
}

/// Grid used by scalar sup checks: `n` uniform points over each interval, endpoints included.
inline std::vector<double> sup_grid(const std::vector<std::pair<double, double>>& intervals, int n)
{
    std::vector<double> xs;
    for (const auto& [a, b] : intervals) {
        const int m = std::max(2, n / static_cast<int>(intervals.size()));
        for (int i = 0; i < m; ++i) {
            xs.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1));
        }
    }
    return xs;
}

} // namespace lcu
