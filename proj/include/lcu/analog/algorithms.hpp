#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "lcu/analog/grid.hpp"
#include "lcu/apps/gsp.hpp"
#include "lcu/apps/qls.hpp"

namespace lcu::analog {

/// Grid policy. z_max <= 0 selects 8 + sqrt(2 ln(1/eps)); point counts grow past n_points when aliasing demands it.
struct GridSpec {
    Index n_points = 4096;
    double z_max = 0.0;
    double grid_tol = 1e-8;
    bool check_convergence = true;
    unsigned threads = 1;
};

struct GridInfo {
    GridKind kind = GridKind::line;
    Index n = 0;
    double z_max = 0.0;
};

inline GridInfo info(const QumodeGrid& g) { return {g.kind(), g.n(), g.z_max()}; }

inline double default_extent(const GridSpec& spec, double epsilon)
{
    return spec.z_max > 0.0 ? spec.z_max : 8.0 + std::sqrt(2.0 * std::log(1.0 / epsilon));
}

/// Line grid fine enough that the highest phase frequency stays 12 below the trapezoid aliasing frequency 2 pi / h.
inline QumodeGrid line_grid(const GridSpec& spec, double epsilon, double max_frequency)
{
    const double z_max = default_extent(spec, epsilon);
    const double h = 2.0 * kPi / (max_frequency + 12.0);
    const auto need = static_cast<Index>(std::ceil(2.0 * z_max / h)) + 1;
    return QumodeGrid::line(z_max, std::max(spec.n_points, need));
}

/// Ring grid with spacing at most 1/(100 max_frequency) and an odd point count.
inline QumodeGrid ring_grid(const GridSpec& spec, double max_frequency)
{
    Index n = std::max(spec.n_points, static_cast<Index>(std::ceil(100.0 * max_frequency)));
    if (n % 2 == 1) {
        ++n;
    }
    return QumodeGrid::ring(n + 1);
}

/// Largest weight-relevant coordinate on a Gaussian-weighted line: e^{-z^2/2} < 1e-17 beyond 9.
inline constexpr double kGaussianReach = 9.0;

struct AnalogGspResult {
    StateVector state;
    Vector component;
    double success_prob = 0.0;
    double t = 0.0;
    double bigT = 0.0;
    PauliHamiltonian normalized;
    GridInfo grid;
    bool converged = false;
    double convergence_change = 0.0;
};

namespace detail {

inline void reject_unconverged(const char* what, double change, double budget)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": grid refinement changed the result by " << change << ", above 10% of the error budget " << budget;
    throw ConvergenceError(msg.str());
}

} // namespace detail

/// Ground-state preparation by H (x) z coupling to a Gaussian ancilla and post-selection on the same Gaussian.
inline AnalogGspResult analog_gsp(const apps::GspProblem& p, double epsilon, const GridSpec& spec = {})
{
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
    const apps::GspPlan plan = apps::gsp_normalize(p);
    AnalogGspResult out;
    out.normalized = plan.normalized;
    const double eta2 = p.eta * p.eta;
    out.t = apps::gsp_filter_time(plan.gap, (1.0 - eta2) / (eta2 * epsilon * epsilon));
    out.bigT = std::sqrt(2.0 * out.t);
    const DenseOperator h = ham_to_dense(plan.normalized);
    const auto run = [&](const QumodeGrid& g) {
        const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, g);
        const HybridState s = evolve_bilinear(h, p.initial_state, {a}, out.bigT, spec.threads);
        return project_ancilla(s, {a});
    };
    // Normalized spectrum lies in [-1, 1], so the phase frequency is at most T.
    const QumodeGrid grid = line_grid(spec, epsilon, out.bigT);
    const Projection coarse = run(grid);
    out.component = coarse.component;
    out.success_prob = coarse.success_prob;
    out.grid = info(grid);
    require(out.success_prob > 0.0, "post-selection probability vanished");
    out.state = StateVector::normalize(coarse.component);
    out.converged = true;
    if (spec.check_convergence) {
        const Projection fine = run(grid.refined());
        const StateVector fs = StateVector::normalize(fine.component);
        out.convergence_change = std::max(std::abs(fine.success_prob - coarse.success_prob),
            (fs.amplitudes() - out.state.amplitudes()).norm());
        out.converged = out.convergence_change < 0.1 * epsilon;
        if (!out.converged) {
            detail::reject_unconverged("analog-gsp", out.convergence_change, epsilon);
        }
    }
    return out;
}

enum class QlsAncilla { ring, gaussian };

inline std::string to_string(QlsAncilla a) { return a == QlsAncilla::ring ? "ring" : "gaussian"; }

struct AnalogQlsResult {
    Vector component;
    double success_prob = 0.0;
    double bigT = 0.0;
    double error_vs_oracle = 0.0;
    double truncation_error = 0.0;
    double grid_error = 0.0;
    std::vector<GridInfo> grids;
    bool converged = false;
    double convergence_change = 0.0;
};

/// Ancillas, post-selection targets and the phase that maps the projected component onto H^{-1} b / T.
struct QlsSetup {
    std::vector<AncillaState> ancillas;
    std::vector<AncillaState> targets;
    cplx phase;
};

inline QlsSetup ring_setup(const QumodeGrid& line, const QumodeGrid& ring)
{
    // The harmonic first excited state projected on the Gaussian ground state yields -i w e^{-w^2/2}.
    return {{AncillaState::make(AncillaKind::harmonic_first_excited, line), AncillaState::make(AncillaKind::ring_flat, ring)},
        {AncillaState::make(AncillaKind::gaussian_ground, line), AncillaState::make(AncillaKind::ring_flat, ring)}, kI};
}

inline QlsSetup gaussian_setup(const QumodeGrid& gy, const QumodeGrid& gz)
{
    const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, gy);
    const AncillaState b = AncillaState::make(AncillaKind::gaussian_ground, gz);
    return {{a, b}, {a, b}, 1.0};
}

inline double ring_time(double kappa, double epsilon) { return kappa * std::sqrt(2.0 * std::log(kappa / epsilon)); }

inline double gaussian_time(double kappa, double epsilon) { return std::pow(kappa, 1.5) / std::sqrt(epsilon); }

struct QlsGrids {
    QumodeGrid first;
    QumodeGrid second;
};

inline QlsGrids qls_grids(QlsAncilla kind, const GridSpec& spec, double epsilon, double bigT)
{
    if (kind == QlsAncilla::ring) {
        return {line_grid(spec, epsilon, bigT), ring_grid(spec, bigT)};
    }
    const double reach = std::min(default_extent(spec, epsilon), kGaussianReach);
    const QumodeGrid g = line_grid(spec, epsilon, bigT * reach);
    return {g, g};
}

inline QlsSetup qls_setup(QlsAncilla kind, const QlsGrids& g)
{
    return kind == QlsAncilla::ring ? ring_setup(g.first, g.second) : gaussian_setup(g.first, g.second);
}

/// Linear systems via H (x) y (x) z coupling; the projected component approximates H^{-1} b / T.
inline AnalogQlsResult analog_qls(const apps::QlsProblem& p, double epsilon, QlsAncilla kind, const GridSpec& spec = {})
{
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
    p.validate();
    const Eigensystem es = eigensystem(ham_to_dense(p.hamiltonian));
    if (kind == QlsAncilla::gaussian) {
        require(es.values.minCoeff() > 0.0, "Gaussian-ancilla linear solver needs a positive definite Hamiltonian");
    }
    require(es.values.cwiseAbs().minCoeff() > 0.0, "Hamiltonian is singular");
    AnalogQlsResult out;
    out.bigT = kind == QlsAncilla::ring ? ring_time(p.kappa, epsilon) : gaussian_time(p.kappa, epsilon);
    const double bigT = out.bigT;
    const auto run = [&](const QlsGrids& g) {
        const QlsSetup s = qls_setup(kind, g);
        const Vector raw = bilinear_component(es, p.b, s.ancillas, s.targets, bigT, spec.threads);
        return std::pair<Vector, double>{s.phase * raw, raw.squaredNorm()};
    };
    const QlsGrids grids = qls_grids(kind, spec, epsilon, bigT);
    auto [comp, prob] = run(grids);
    out.component = comp;
    out.success_prob = prob;
    out.grids = {info(grids.first), info(grids.second)};

    const Vector c = es.vectors.adjoint() * p.b.amplitudes();
    Vector exact(c.size()), continuum(c.size());
    for (Index k = 0; k < c.size(); ++k) {
        const double x = es.values(k);
        exact(k) = c(k) / (x * bigT);
        continuum(k) = kind == QlsAncilla::ring ? c(k) * (1.0 - std::exp(-0.5 * x * x * bigT * bigT)) / (x * bigT)
                                                : c(k) / std::sqrt(1.0 + x * x * bigT * bigT);
    }
    const Vector oracle = es.vectors * exact;
    const Vector smooth = es.vectors * continuum;
    out.error_vs_oracle = (out.component - oracle).norm();
    out.truncation_error = (smooth - oracle).norm();
    out.grid_error = (out.component - smooth).norm();

    out.converged = true;
    if (spec.check_convergence) {
        const QlsGrids fine {grids.first.refined(), kind == QlsAncilla::ring ? grids.second.refined() : grids.first.refined()};
        const auto [fcomp, fprob] = run(fine);
        out.convergence_change = (fcomp - out.component).norm();
        const double budget = epsilon / bigT;
        out.converged = out.convergence_change < 0.1 * budget;
        if (!out.converged) {
            detail::reject_unconverged("analog-qls", out.convergence_change, budget);
        }
    }
    return out;
}

/// i T <psi_g, flat| e^{-i x T y z} |psi_h, flat>: the quadrature form of (i/sqrt(2 pi)) Int_0^T dt Int dz z e^{-z^2/2} e^{-izxt}.
inline cplx ring_inverse_scalar(double x, double bigT, const QumodeGrid& line, const QumodeGrid& ring)
{
    const QlsSetup s = ring_setup(line, ring);
    return s.phase * bigT * filter_scalar(x, s.ancillas, s.targets, bigT);
}

/// T <psi_g, psi_g| e^{-i x T y z} |psi_g, psi_g>, which tends to 1/sqrt(x^2 + 1/T^2).
inline cplx gaussian_inverse_scalar(double x, double bigT, const QumodeGrid& gy, const QumodeGrid& gz)
{
    const QlsSetup s = gaussian_setup(gy, gz);
    return bigT * filter_scalar(x, s.ancillas, s.targets, bigT);
}

/// |1/x - 1/sqrt(x^2 + 1/T^2)|.
inline double gaussian_truncation_error(double x, double bigT)
{
    return std::abs(1.0 / x - 1.0 / std::sqrt(x * x + 1.0 / (bigT * bigT)));
}

struct ScalarSup {
    double bigT = 0.0;
    double sup_error = 0.0;
    double worst_x = 0.0;
    GridInfo line;
    GridInfo ring;
};

/// Sup over [-1,-1/kappa] U [1/kappa,1] of |1/x - ring_inverse_scalar(x)| at T = kappa sqrt(2 ln(kappa/eps)).
inline ScalarSup ring_scalar_sup(double kappa, double epsilon, const GridSpec& spec = {}, int n_points = 2000)
{
    require(kappa >= 1.0 && epsilon > 0.0 && epsilon < 1.0, "invalid scalar check parameters");
    ScalarSup out;
    out.bigT = ring_time(kappa, epsilon);
    const QlsGrids g = qls_grids(QlsAncilla::ring, spec, epsilon, out.bigT);
    out.line = info(g.first);
    out.ring = info(g.second);
    const std::vector<double> xs = sup_grid({{-1.0, -1.0 / kappa}, {1.0 / kappa, 1.0}}, n_points);
    std::vector<double> err(xs.size());
    parallel_for(xs.size(), spec.threads, [&](std::size_t i) {
        err[i] = std::abs(1.0 / xs[i] - ring_inverse_scalar(xs[i], out.bigT, g.first, g.second));
    });
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (err[i] > out.sup_error) {
            out.sup_error = err[i];
            out.worst_x = xs[i];
        }
    }
    return out;
}

} // namespace lcu::analog
