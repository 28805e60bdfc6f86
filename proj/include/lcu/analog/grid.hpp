#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lcu/core/dense.hpp"
#include "lcu/core/parallel.hpp"

namespace lcu::analog {

enum class GridKind { line, ring };

inline std::string to_string(GridKind k) { return k == GridKind::line ? "line" : "ring"; }

/// Position grid of one continuous-variable ancilla with quadrature weights.
/// Line: uniform on [-z_max, z_max], trapezoid weights. Ring: uniform on [0,1], composite Simpson weights.
class QumodeGrid {
public:
    static QumodeGrid line(double z_max, Index n)
    {
        require(z_max > 0.0 && std::isfinite(z_max), "line grid needs a positive extent");
        require(n >= 2, "line grid needs at least two points");
        QumodeGrid g(GridKind::line, z_max, n);
        const double h = 2.0 * z_max / static_cast<double>(n - 1);
        for (Index i = 0; i < n; ++i) {
            g.points_(i) = -z_max + h * static_cast<double>(i);
            g.weights_(i) = (i == 0 || i == n - 1) ? 0.5 * h : h;
        }
        g.spacing_ = h;
        return g;
    }

    /// `n` must be odd so the Simpson panels pair up.
    static QumodeGrid ring(Index n)
    {
        require(n >= 3 && n % 2 == 1, "ring grid needs an odd number of points >= 3");
        QumodeGrid g(GridKind::ring, 1.0, n);
        const double h = 1.0 / static_cast<double>(n - 1);
        for (Index i = 0; i < n; ++i) {
            g.points_(i) = h * static_cast<double>(i);
            const double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            g.weights_(i) = c * h / 3.0;
        }
        g.spacing_ = h;
        return g;
    }

    /// Twice the density; line extent grows by 25%.
    QumodeGrid refined() const
    {
        return kind_ == GridKind::line ? line(1.25 * extent_, 2 * n()) : ring(2 * n() - 1);
    }

    GridKind kind() const { return kind_; }
    Index n() const { return points_.size(); }
    double z_max() const { return extent_; }
    double spacing() const { return spacing_; }
    const RealVector& points() const { return points_; }
    const RealVector& weights() const { return weights_; }

    bool same_as(const QumodeGrid& o) const
    {
        return kind_ == o.kind_ && n() == o.n() && (points_ - o.points_).cwiseAbs().maxCoeff() == 0.0;
    }

private:
    QumodeGrid(GridKind k, double extent, Index n)
        : kind_(k)
        , extent_(extent)
        , points_(n)
        , weights_(n)
    {
    }

    GridKind kind_ = GridKind::line;
    double extent_ = 0.0;
    double spacing_ = 0.0;
    RealVector points_;
    RealVector weights_;
};

enum class AncillaKind { gaussian_ground, harmonic_first_excited, ring_flat };

/// Real ancilla wavefunction normalized under its grid quadrature.
struct AncillaState {
    AncillaKind kind;
    QumodeGrid grid;
    RealVector amplitudes;

    static AncillaState make(AncillaKind kind, const QumodeGrid& grid)
    {
        RealVector a(grid.n());
        for (Index i = 0; i < grid.n(); ++i) {
            const double z = grid.points()(i);
            switch (kind) {
            case AncillaKind::gaussian_ground: a(i) = std::exp(-0.25 * z * z); break;
            case AncillaKind::harmonic_first_excited: a(i) = z * std::exp(-0.25 * z * z); break;
            case AncillaKind::ring_flat: a(i) = 1.0; break;
            }
        }
        require(kind != AncillaKind::ring_flat || grid.kind() == GridKind::ring, "ring_flat lives on a ring grid");
        const double n2 = grid.weights().dot(a.cwiseAbs2());
        require(n2 > 0.0, "ancilla state vanishes on the grid");
        a /= std::sqrt(n2);
        return {kind, grid, std::move(a)};
    }

    double norm2() const { return grid.weights().dot(amplitudes.cwiseAbs2()); }
};

/// System (x) one or two ancillas; column c = iy * nz + iz.
struct HybridState {
    Index system_dim = 0;
    std::vector<QumodeGrid> grids;
    Matrix amplitudes;

    double norm2() const
    {
        const RealVector w = joint_weights();
        double acc = 0.0;
        for (Index c = 0; c < amplitudes.cols(); ++c) {
            acc += w(c) * amplitudes.col(c).squaredNorm();
        }
        return acc;
    }

    RealVector joint_weights() const
    {
        if (grids.size() == 1) {
            return grids[0].weights();
        }
        const Index nz = grids[1].n();
        RealVector w(grids[0].n() * nz);
        for (Index iy = 0; iy < grids[0].n(); ++iy) {
            w.segment(iy * nz, nz) = grids[0].weights()(iy) * grids[1].weights();
        }
        return w;
    }
};

inline constexpr double kMaxHybridEntries = 1e8;

/// e^{-i T H (x) z} or e^{-i T H (x) y (x) z} applied to psi0 (x) ancillas, one eigendecomposition reused per point.
inline HybridState evolve_bilinear(const DenseOperator& h, const StateVector& psi0, const std::vector<AncillaState>& ancillas,
    double bigT, unsigned threads = 1)
{
    require(ancillas.size() == 1 || ancillas.size() == 2, "one or two ancillas supported");
    require(psi0.dim() == h.dim(), "state and Hamiltonian dimensions differ");
    const Eigensystem es = eigensystem(h);
    const Vector c = es.vectors.adjoint() * psi0.amplitudes();
    HybridState out;
    out.system_dim = h.dim();
    for (const auto& a : ancillas) {
        out.grids.push_back(a.grid);
    }
    const Index ny = ancillas[0].grid.n();
    const Index nz = ancillas.size() == 2 ? ancillas[1].grid.n() : 1;
    require(static_cast<double>(h.dim()) * static_cast<double>(ny * nz) <= kMaxHybridEntries,
        "hybrid state exceeds the dense memory cap");
    out.amplitudes.resize(h.dim(), ny * nz);
    parallel_for(static_cast<std::size_t>(ny), threads, [&](std::size_t iyu) {
        const auto iy = static_cast<Index>(iyu);
        Vector phased(c.size());
        for (Index iz = 0; iz < nz; ++iz) {
            double coord = ancillas[0].grid.points()(iy);
            double amp = ancillas[0].amplitudes(iy);
            if (ancillas.size() == 2) {
                coord *= ancillas[1].grid.points()(iz);
                amp *= ancillas[1].amplitudes(iz);
            }
            for (Index k = 0; k < c.size(); ++k) {
                phased(k) = std::exp(cplx(0.0, -es.values(k) * coord * bigT)) * c(k);
            }
            out.amplitudes.col(iy * nz + iz) = amp * (es.vectors * phased);
        }
    });
    return out;
}

struct Projection {
    Vector component;
    double success_prob = 0.0;
};

/// (I (x) <targets|) state under quadrature.
inline Projection project_ancilla(const HybridState& state, const std::vector<AncillaState>& targets)
{
    require(targets.size() == state.grids.size(), "one target per ancilla required");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        require(targets[i].grid.same_as(state.grids[i]), "target grid does not match the state grid");
    }
    const Index nz = targets.size() == 2 ? targets[1].grid.n() : 1;
    Vector comp = Vector::Zero(state.system_dim);
    const RealVector w = state.joint_weights();
    for (Index col = 0; col < state.amplitudes.cols(); ++col) {
        double t = targets[0].amplitudes(col / nz);
        if (targets.size() == 2) {
            t *= targets[1].amplitudes(col % nz);
        }
        comp += (w(col) * t) * state.amplitudes.col(col);
    }
    return {comp, comp.squaredNorm()};
}

namespace detail {

/// Sum_k f_k e^{-i w (x0 + k h)} by Horner in q = e^{-i w h}.
inline cplx uniform_phase_sum(const RealVector& f, double x0, double h, double w)
{
    const cplx q = std::exp(cplx(0.0, -w * h));
    cplx acc = 0.0;
    for (Index k = f.size() - 1; k >= 0; --k) {
        acc = acc * q + f(k);
    }
    return acc * std::exp(cplx(0.0, -w * x0));
}

/// Sum_{k=0}^{n} e^{-i theta k} via the Dirichlet kernel.
inline cplx dirichlet(long n, double theta)
{
    const double s = std::sin(0.5 * theta);
    if (std::abs(s) < 1e-9) {
        cplx acc = 0.0;
        for (long k = 0; k <= n; ++k) {
            acc += std::exp(cplx(0.0, -theta * static_cast<double>(k)));
        }
        return acc;
    }
    const double nd = static_cast<double>(n);
    return std::exp(cplx(0.0, -0.5 * nd * theta)) * (std::sin(0.5 * (nd + 1.0) * theta) / s);
}

/// Simpson-weighted Sum_k w_k e^{-i w r_k} over a ring grid, in closed form.
inline cplx ring_flat_sum(const QumodeGrid& ring, double w)
{
    const long n = static_cast<long>(ring.n()) - 1;
    const double h = ring.spacing();
    const double theta = w * h;
    const cplx all = dirichlet(n, theta);
    const cplx odd = std::exp(cplx(0.0, -theta)) * dirichlet(n / 2 - 1, 2.0 * theta);
    const cplx last = std::exp(cplx(0.0, -theta * static_cast<double>(n)));
    return h / 3.0 * (2.0 * all + 2.0 * odd - 1.0 - last);
}

inline bool is_constant(const RealVector& v)
{
    return (v.array() - v(0)).abs().maxCoeff() <= 1e-15 * std::abs(v(0));
}

} // namespace detail

/// <targets| e^{-i lambda T coord} |ancillas> summed on the grids: the scalar filter seen by eigenvalue lambda.
inline cplx filter_scalar(double lambda, const std::vector<AncillaState>& ancillas, const std::vector<AncillaState>& targets, double bigT)
{
    require(ancillas.size() == targets.size() && (ancillas.size() == 1 || ancillas.size() == 2), "one or two ancillas supported");
    for (std::size_t i = 0; i < ancillas.size(); ++i) {
        require(ancillas[i].grid.same_as(targets[i].grid), "target grid does not match the ancilla grid");
    }
    const QumodeGrid& gy = ancillas[0].grid;
    const RealVector fy = gy.weights().cwiseProduct(targets[0].amplitudes).cwiseProduct(ancillas[0].amplitudes);
    const auto line_sum = [&](const RealVector& f, const QumodeGrid& g, double w) {
        return detail::uniform_phase_sum(f, g.points()(0), g.spacing(), w);
    };
    if (ancillas.size() == 1) {
        return line_sum(fy, gy, lambda * bigT);
    }
    const QumodeGrid& gz = ancillas[1].grid;
    const RealVector gz_prod = targets[1].amplitudes.cwiseProduct(ancillas[1].amplitudes);
    cplx acc = 0.0;
    if (gz.kind() == GridKind::ring && detail::is_constant(gz_prod)) {
        for (Index iy = 0; iy < gy.n(); ++iy) {
            if (fy(iy) != 0.0) {
                acc += fy(iy) * detail::ring_flat_sum(gz, lambda * bigT * gy.points()(iy));
            }
        }
        return gz_prod(0) * acc;
    }
    const RealVector fz = gz.weights().cwiseProduct(gz_prod);
    for (Index iz = 0; iz < gz.n(); ++iz) {
        if (fz(iz) != 0.0) {
            acc += fz(iz) * line_sum(fy, gy, lambda * bigT * gz.points()(iz));
        }
    }
    return acc;
}

/// Fused evolve-and-project: V diag(S(lambda)) V^dagger psi0 with S from filter_scalar.
inline Vector bilinear_component(const Eigensystem& es, const StateVector& psi0, const std::vector<AncillaState>& ancillas,
    const std::vector<AncillaState>& targets, double bigT, unsigned threads = 1)
{
    require(psi0.dim() == es.dim(), "state and Hamiltonian dimensions differ");
    Vector s(es.dim());
    parallel_for(static_cast<std::size_t>(es.dim()), threads,
        [&](std::size_t k) { s(static_cast<Index>(k)) = filter_scalar(es.values(static_cast<Index>(k)), ancillas, targets, bigT); });
    const Vector c = es.vectors.adjoint() * psi0.amplitudes();
    return es.vectors * s.cwiseProduct(c);
}

} // namespace lcu::analog
