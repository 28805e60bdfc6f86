#pragma once

#include <string_view>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

#include "lcu/core/types.hpp"

namespace lcu {

/// Square complex matrix with Hermitian/unitary flags checked at construction.
class DenseOperator {
public:
    DenseOperator() = default;

    static DenseOperator general(Matrix m)
    {
        require(m.rows() == m.cols() && m.rows() > 0, "operator must be square and nonempty");
        return DenseOperator(std::move(m), false, false);
    }

    static DenseOperator hermitian(Matrix m)
    {
        require(m.rows() == m.cols() && m.rows() > 0, "operator must be square and nonempty");
        const double scale = m.norm();
        require((m - m.adjoint()).norm() <= 1e-12 * scale, "operator is not Hermitian");
        Matrix sym = 0.5 * (m + m.adjoint());
        return DenseOperator(std::move(sym), true, false);
    }

    static DenseOperator unitary(Matrix m)
    {
        require(m.rows() == m.cols() && m.rows() > 0, "operator must be square and nonempty");
        const Matrix gram = m.adjoint() * m;
        require((gram - Matrix::Identity(m.rows(), m.cols())).norm() <= 1e-10, "operator is not unitary");
        const bool herm = (m - m.adjoint()).norm() <= 1e-12 * m.norm();
        return DenseOperator(std::move(m), herm, true);
    }

    static DenseOperator identity(Index dim) { return DenseOperator(Matrix::Identity(dim, dim), true, true); }

    const Matrix& matrix() const { return m_; }
    Index dim() const { return m_.rows(); }
    bool is_hermitian() const { return hermitian_; }
    bool is_unitary() const { return unitary_; }

private:
    DenseOperator(Matrix m, bool herm, bool unit)
        : m_(std::move(m))
        , hermitian_(herm)
        , unitary_(unit)
    {
    }

    Matrix m_;
    bool hermitian_ = false;
    bool unitary_ = false;
};

/// Amplitude vector; normalized vectors are checked to 1e-10.
class StateVector {
public:
    StateVector() = default;

    static StateVector normalized(Vector v)
    {
        require(v.size() > 0, "state must be nonempty");
        require(std::abs(v.squaredNorm() - 1.0) <= 1e-10, "state is not normalized");
        return StateVector(std::move(v), true);
    }

    static StateVector unnormalized(Vector v) { return StateVector(std::move(v), false); }

    /// Rescales to unit norm; fails on the zero vector.
    static StateVector normalize(Vector v)
    {
        const double n = v.norm();
        require(n > 0.0, "cannot normalize the zero vector");
        v /= n;
        return StateVector(std::move(v), true);
    }

    static StateVector basis(Index dim, Index k)
    {
        require(k >= 0 && k < dim, "basis index out of range");
        Vector v = Vector::Zero(dim);
        v(k) = 1.0;
        return StateVector(std::move(v), true);
    }

    /// Product state from per-qubit labels over {0,1,+,-}, leftmost qubit most significant.
    static StateVector from_label(std::string_view label)
    {
        if (label.empty()) {
            throw ConfigError("empty state label");
        }
        Vector v = Vector::Ones(1);
        const double h = 1.0 / std::sqrt(2.0);
        for (char c : label) {
            Vector q(2);
            switch (c) {
            case '0': q << 1.0, 0.0; break;
            case '1': q << 0.0, 1.0; break;
            case '+': q << h, h; break;
            case '-': q << h, -h; break;
            default: throw ConfigError(std::string("bad state label symbol '") + c + "'");
            }
            Vector next = Eigen::kroneckerProduct(v, q).eval();
            v = std::move(next);
        }
        return StateVector(std::move(v), true);
    }

    const Vector& amplitudes() const { return v_; }
    Index dim() const { return v_.size(); }
    bool is_normalized() const { return normalized_; }

    /// Number of qubits when the dimension is a power of two, otherwise -1.
    int n_qubits() const
    {
        Index d = v_.size();
        int n = 0;
        while (d > 1 && d % 2 == 0) {
            d /= 2;
            ++n;
        }
        return d == 1 ? n : -1;
    }

private:
    StateVector(Vector v, bool norm)
        : v_(std::move(v))
        , normalized_(norm)
    {
    }

    Vector v_;
    bool normalized_ = false;
};

/// Eigenpairs of a Hermitian operator, ascending eigenvalues.
struct Eigensystem {
    RealVector values;
    Matrix vectors;

    Index dim() const { return values.size(); }
};

inline Eigensystem eigensystem(const DenseOperator& a)
{
    require(a.is_hermitian(), "eigensystem requires a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver failed");
    }
    Eigensystem es{solver.eigenvalues(), solver.eigenvectors()};
    const Matrix rebuilt = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    const double resid = (rebuilt - a.matrix()).norm();
    if (resid > 1e-10 * std::max(1.0, a.matrix().norm())) {
        throw ConvergenceError("eigendecomposition reconstruction residual too large");
    }
    return es;
}

/// Sum_j f(lambda_j) v_j v_j^dagger on a precomputed eigensystem.
template <class F>
Matrix apply_function(const Eigensystem& es, F&& f)
{
    Vector fv(es.dim());
    for (Index j = 0; j < es.dim(); ++j) {
        fv(j) = cplx(f(es.values(j)));
    }
    return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

template <class F>
DenseOperator matrix_function(const DenseOperator& a, F&& f)
{
    return DenseOperator::general(apply_function(eigensystem(a), std::forward<F>(f)));
}

/// e^{-i t H} from an eigensystem of H.
inline Matrix evolution(const Eigensystem& es, double t)
{
    return apply_function(es, [t](double x) { return std::exp(cplx(0.0, -t * x)); });
}

/// Largest singular value.
inline double spectral_norm(const Matrix& m)
{
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Spectral norm of a Hermitian operator via its eigenvalues.
inline double hermitian_norm(const DenseOperator& a)
{
    require(a.is_hermitian(), "hermitian_norm requires a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

inline double expectation(const StateVector& psi, const DenseOperator& o)
{
    require(psi.dim() == o.dim(), "dimension mismatch in expectation");
    require(o.is_hermitian(), "observable must be Hermitian");
    const cplx e = psi.amplitudes().dot(o.matrix() * psi.amplitudes());
    require(std::abs(e.imag()) <= 1e-12 * std::max(1.0, std::abs(e.real())) + 1e-12, "expectation has imaginary residue");
    return e.real();
}

inline double expectation(const DenseOperator& rho, const DenseOperator& o)
{
    require(rho.dim() == o.dim(), "dimension mismatch in expectation");
    require(o.is_hermitian(), "observable must be Hermitian");
    const cplx e = (o.matrix() * rho.matrix()).trace();
    require(std::abs(e.imag()) <= 1e-12 * std::max(1.0, std::abs(e.real())) + 1e-12, "expectation has imaginary residue");
    return e.real();
}

inline DenseOperator tensor(const DenseOperator& a, const DenseOperator& b)
{
    Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
    if (a.is_unitary() && b.is_unitary()) {
        return DenseOperator::unitary(std::move(m));
    }
    if (a.is_hermitian() && b.is_hermitian()) {
        return DenseOperator::hermitian(std::move(m));
    }
    return DenseOperator::general(std::move(m));
}

inline StateVector tensor_state(const StateVector& a, const StateVector& b)
{
    Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
    if (a.is_normalized() && b.is_normalized()) {
        return StateVector::normalized(std::move(v));
    }
    return StateVector::unnormalized(std::move(v));
}

/// |psi><psi|.
inline DenseOperator density(const StateVector& psi)
{
    return DenseOperator::hermitian(psi.amplitudes() * psi.amplitudes().adjoint());
}

} // namespace lcu
