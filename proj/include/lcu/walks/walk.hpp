#pragma once

#include "lcu/decomp/chebyshev.hpp"
#include "lcu/walks/markov.hpp"

namespace lcu::walks {

/// Szegedy walk on the edge space |y, x> (index y n + x); the reference state |0bar> is y = 0.
struct WalkOperator {
    Index n = 0;
    DenseOperator u_p;
    DenseOperator u_d;
    DenseOperator v;
    DenseOperator d;

    Index edge_dim() const { return n * n; }
};

/// Swap |y, x> <-> |x, y> applied to the rows of m.
inline RealMatrix swap_rows(const RealMatrix& m, Index n)
{
    RealMatrix out(m.rows(), m.cols());
    for (Index y = 0; y < n; ++y) {
        for (Index x = 0; x < n; ++x) {
            out.row(y * n + x) = m.row(x * n + y);
        }
    }
    return out;
}

/// U_P with prescribed columns U_P|0,x> = Sum_y sqrt(p_xy)|y,x>, completed by Householder QR.
inline RealMatrix walk_isometry(const RealMatrix& p)
{
    const Index n = p.rows();
    const Index e = n * n;
    RealMatrix a = RealMatrix::Zero(e, n);
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
            a(y * n + x, x) = std::sqrt(p(x, y));
        }
    }
    const Eigen::HouseholderQR<RealMatrix> qr(a);
    RealMatrix u = qr.householderQ();
    u.leftCols(n) = a;
    return u;
}

inline constexpr Index kMaxWalkNodes = 64;

/// V = [(2 Pi_0 - I) (x) I] U_P^T S U_P for a row-stochastic p.
inline WalkOperator build_walk(const RealMatrix& p)
{
    const Index n = p.rows();
    require(n >= 1 && n <= kMaxWalkNodes, "walk operators are capped at 64 nodes");
    const RealMatrix up = walk_isometry(p);
    const RealMatrix ud = up.transpose() * swap_rows(up, n);
    RealMatrix v = -ud;
    v.topRows(n) = ud.topRows(n);
    WalkOperator w;
    w.n = n;
    w.u_p = DenseOperator::unitary(up.cast<cplx>());
    w.u_d = DenseOperator::unitary(ud.cast<cplx>());
    w.v = DenseOperator::unitary(v.cast<cplx>());
    w.d = discriminant(p);
    return w;
}

inline WalkOperator build_walk(const InterpolatedChain& c) { return build_walk(c.p()); }

inline WalkOperator build_walk(const MarkovChain& c) { return build_walk(c.p()); }

/// (<0bar| (x) I) M (|0bar> (x) I).
inline Matrix top_block(const Matrix& m, Index n) { return m.topLeftCorner(n, n); }

/// |0bar> (x) |psi>.
inline Vector embed(const Vector& psi, Index n)
{
    Vector out = Vector::Zero(n * n);
    out.head(n) = psi;
    return out;
}

/// ||(<0bar| (x) I) V^t (|0bar> (x) I) - T_t(D)||.
inline double chebyshev_block_check(const WalkOperator& w, long t)
{
    require(t >= 0, "power must be nonnegative");
    Matrix vt = Matrix::Identity(w.edge_dim(), w.edge_dim());
    for (long k = 0; k < t; ++k) {
        vt = w.v.matrix() * vt;
    }
    const Matrix tt = apply_function(eigensystem(w.d), [t](double x) { return chebyshev_t(t, x); });
    return spectral_norm(top_block(vt, w.n) - tt);
}

/// H_P = i [U_H, Pi_0] with Pi_0 = |0bar><0bar| (x) I on the first `system_dim` coordinates.
inline DenseOperator build_hp(const DenseOperator& u_h, Index system_dim)
{
    require(u_h.is_unitary(), "block encoding must be unitary");
    const Index e = u_h.dim();
    require(system_dim >= 1 && system_dim <= e, "system dimension out of range");
    require((u_h.matrix() * u_h.matrix() - Matrix::Identity(e, e)).norm() <= 1e-10, "block encoding must be involutory");
    Matrix pi0 = Matrix::Zero(e, e);
    pi0.topLeftCorner(system_dim, system_dim).setIdentity();
    return DenseOperator::hermitian(kI * (u_h.matrix() * pi0 - pi0 * u_h.matrix()));
}

} // namespace lcu::walks
