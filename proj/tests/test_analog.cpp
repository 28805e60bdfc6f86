#include <gtest/gtest.h>

#include "lcu/analog/algorithms.hpp"
#include "lcu/apps/oracles.hpp"
#include "lcu/estimator/robustness.hpp"

using namespace lcu;
using namespace lcu::analog;

namespace {

DenseOperator op(const char* pauli) { return ham_to_dense(PauliHamiltonian::parse(pauli)); }

apps::GspProblem toy(const char* state)
{
    apps::GspProblem p;
    p.hamiltonian = PauliHamiltonian::parse("0.5*I - 0.5*Z");
    p.gap = 1.0;
    p.eta = 1.0 / std::sqrt(2.0);
    p.initial_state = StateVector::from_label(state);
    return p;
}

/// Normalized filter component e^{-t H^2} psi0 on the normalized Hamiltonian.
Vector filtered(const PauliHamiltonian& h, const StateVector& psi0, double t)
{
    return matrix_function(ham_to_dense(h), [t](double x) { return std::exp(-t * x * x); }).matrix() * psi0.amplitudes();
}

} // namespace

TEST(Grid, LineAndRingQuadrature)
{
    const QumodeGrid line = QumodeGrid::line(8.0, 2049);
    EXPECT_GT(line.weights().minCoeff(), 0.0);
    EXPECT_NEAR(line.weights().sum(), 16.0, 1e-12);
    const QumodeGrid ring = QumodeGrid::ring(101);
    EXPECT_GT(ring.weights().minCoeff(), 0.0);
    EXPECT_NEAR(ring.weights().sum(), 1.0, 1e-14);
    // Simpson integrates cubics exactly.
    EXPECT_NEAR(ring.weights().dot(ring.points().array().cube().matrix()), 0.25, 1e-14);
    EXPECT_THROW(QumodeGrid::ring(100), PreconditionError);
    EXPECT_THROW(QumodeGrid::line(-1.0, 10), PreconditionError);
}

TEST(Grid, RefinementDoublesDensityAndGrowsExtent)
{
    const QumodeGrid g = QumodeGrid::line(8.0, 1000).refined();
    EXPECT_EQ(g.n(), 2000);
    EXPECT_DOUBLE_EQ(g.z_max(), 10.0);
    EXPECT_EQ(QumodeGrid::ring(101).refined().n(), 201);
}

TEST(Ancilla, StatesNormalizedOnGrid)
{
    const QumodeGrid line = QumodeGrid::line(10.0, 4096);
    for (AncillaKind k : {AncillaKind::gaussian_ground, AncillaKind::harmonic_first_excited}) {
        const AncillaState a = AncillaState::make(k, line);
        EXPECT_NEAR(a.norm2(), 1.0, 1e-12);
    }
    const AncillaState flat = AncillaState::make(AncillaKind::ring_flat, QumodeGrid::ring(4097));
    EXPECT_NEAR(flat.norm2(), 1.0, 1e-12);
    EXPECT_NEAR(flat.amplitudes(0), 1.0, 1e-12);
    EXPECT_THROW(AncillaState::make(AncillaKind::ring_flat, line), PreconditionError);
    // Gaussian profile is proportional to e^{-z^2/4}.
    const AncillaState g = AncillaState::make(AncillaKind::gaussian_ground, line);
    const double z0 = line.points()(2000);
    const double z1 = line.points()(2400);
    EXPECT_NEAR(g.amplitudes(2400) / g.amplitudes(2000), std::exp(-0.25 * (z1 * z1 - z0 * z0)), 1e-12);
}

TEST(Bilinear, ZeroTimeIsProductState)
{
    const QumodeGrid line = QumodeGrid::line(9.0, 512);
    const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, line);
    const StateVector psi = StateVector::from_label("+");
    const HybridState s = evolve_bilinear(op("0.3*X + 0.4*Z"), psi, {a}, 0.0);
    for (Index i = 0; i < line.n(); ++i) {
        EXPECT_LE((s.amplitudes.col(i) - a.amplitudes(i) * psi.amplitudes()).norm(), 1e-15);
    }
    const Projection pr = project_ancilla(s, {a});
    EXPECT_NEAR(pr.success_prob, 1.0, 1e-12);
}

TEST(Bilinear, ZeroHamiltonianLeavesInput)
{
    const QumodeGrid line = QumodeGrid::line(9.0, 257);
    const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, line);
    const StateVector psi = StateVector::from_label("0+");
    const HybridState s = evolve_bilinear(op("0*ZZ"), psi, {a}, 5.0);
    const Projection pr = project_ancilla(s, {a});
    EXPECT_LE((pr.component - psi.amplitudes()).norm(), 1e-12);
}

TEST(Bilinear, PointwiseUnitaryPreservesNorm)
{
    const QumodeGrid line = QumodeGrid::line(9.0, 301);
    const QumodeGrid ring = QumodeGrid::ring(201);
    const AncillaState h1 = AncillaState::make(AncillaKind::harmonic_first_excited, line);
    const AncillaState flat = AncillaState::make(AncillaKind::ring_flat, ring);
    const HybridState one = evolve_bilinear(op("0.3*XZ - 0.6*ZI"), StateVector::from_label("+1"), {h1}, 7.0);
    EXPECT_NEAR(one.norm2(), h1.norm2(), 1e-10);
    const HybridState two = evolve_bilinear(op("0.3*XZ - 0.6*ZI"), StateVector::from_label("+1"), {h1, flat}, 7.0);
    EXPECT_NEAR(two.norm2(), h1.norm2() * flat.norm2(), 1e-10);
}

TEST(Bilinear, OrthogonalTargetGivesZero)
{
    const QumodeGrid line = QumodeGrid::line(10.0, 1025);
    const AncillaState g = AncillaState::make(AncillaKind::gaussian_ground, line);
    const AncillaState e = AncillaState::make(AncillaKind::harmonic_first_excited, line);
    const HybridState s = evolve_bilinear(op("0.5*Z"), StateVector::from_label("0"), {g}, 0.0);
    EXPECT_LE(project_ancilla(s, {e}).success_prob, 1e-8);
    const AncillaState other = AncillaState::make(AncillaKind::gaussian_ground, QumodeGrid::line(10.0, 1024));
    EXPECT_THROW(project_ancilla(s, {other}), PreconditionError);
}

TEST(Bilinear, GaussianProjectionIsGaussianFilter)
{
    const double t = 3.0;
    const QumodeGrid line = QumodeGrid::line(10.0, 4096);
    const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, line);
    const PauliHamiltonian h = PauliHamiltonian::parse("0.5*Z");
    const StateVector psi = StateVector::from_label("+");
    const HybridState s = evolve_bilinear(ham_to_dense(h), psi, {a}, std::sqrt(2.0 * t));
    EXPECT_LE((project_ancilla(s, {a}).component - filtered(h, psi, t)).norm(), 1e-8);
}

TEST(Bilinear, FusedComponentMatchesStateProjection)
{
    const QumodeGrid line = QumodeGrid::line(9.0, 401);
    const QumodeGrid ring = QumodeGrid::ring(301);
    const QlsSetup s = ring_setup(line, ring);
    const DenseOperator h = op("0.4*XZ + 0.5*ZI");
    const StateVector b = StateVector::from_label("0+");
    const Vector fused = bilinear_component(eigensystem(h), b, s.ancillas, s.targets, 3.0);
    const Vector full = project_ancilla(evolve_bilinear(h, b, s.ancillas, 3.0), s.targets).component;
    EXPECT_LE((fused - full).norm(), 1e-12);
}

TEST(Bilinear, GaussianFourierIdentity)
{
    // (1/sqrt(2 pi)) Int e^{-z^2/2} e^{-i y z} dz = e^{-y^2/2}.
    const QumodeGrid line = QumodeGrid::line(8.0, 2048);
    const AncillaState a = AncillaState::make(AncillaKind::gaussian_ground, line);
    for (double y : {0.0, 0.3, 1.0, 2.5, 4.0}) {
        const cplx v = filter_scalar(y, {a}, {a}, 1.0);
        EXPECT_NEAR(v.real(), std::exp(-0.5 * y * y), 1e-6) << y;
        EXPECT_NEAR(v.imag(), 0.0, 1e-6) << y;
    }
}

TEST(AnalogGsp, EigenstateInput)
{
    const AnalogGspResult r = analog_gsp(toy("0"), 0.01);
    EXPECT_NEAR(apps::fidelity(r.state.amplitudes(), StateVector::from_label("0").amplitudes()), 1.0, 1e-12);
    EXPECT_NEAR(r.success_prob, 1.0, 1e-8);
    EXPECT_TRUE(r.converged);
}

TEST(AnalogGsp, PlusStateHalvesSuccess)
{
    const apps::GspProblem p = toy("+");
    const AnalogGspResult r = analog_gsp(p, 0.01);
    EXPECT_GE(apps::fidelity(r.state.amplitudes(), StateVector::from_label("0").amplitudes()), 0.99);
    EXPECT_NEAR(r.success_prob, 0.5, 0.01);
    const double oracle = filtered(r.normalized, p.initial_state, r.t).squaredNorm();
    EXPECT_NEAR(r.success_prob, oracle, 1e-8);
    EXPECT_DOUBLE_EQ(r.bigT, std::sqrt(2.0 * r.t));
    EXPECT_NEAR(r.t, std::log((1.0 - 0.5) / (0.5 * 1e-4)) / 2.0 + 1.0, 1e-12);
}

TEST(AnalogGsp, TwoQubitInstanceAgainstOracle)
{
    apps::GspProblem p;
    p.hamiltonian = PauliHamiltonian::parse("0.5*II - 0.5*ZZ + 0.1*XI");
    p.gap = 1.019803902718557;
    p.eta = 1.0 / std::sqrt(2.0);
    p.e0 = -0.0099019513592784;
    p.eps_g = 0.01;
    p.initial_state = StateVector::from_label("00");
    const double eps = 0.01;
    const GridSpec spec;
    const AnalogGspResult r = analog_gsp(p, eps, spec);
    const StateVector v0 = apps::ground_projection(ham_to_dense(p.hamiltonian), p.initial_state);
    EXPECT_LE(apps::phase_aligned_distance(r.state.amplitudes(), v0.amplitudes()), eps + spec.grid_tol);
    const double oracle = filtered(r.normalized, p.initial_state, r.t).squaredNorm();
    EXPECT_LE(std::abs(r.success_prob - oracle), 0.1 * oracle);
    EXPECT_GE(r.success_prob, p.eta * p.eta * 0.9);
}

TEST(AnalogGsp, RandomGappedHamiltonians)
{
    Stream rng(12);
    int checked = 0;
    for (int trial = 0; trial < 20 && checked < 5; ++trial) {
        std::vector<PauliHamiltonian::Term> terms;
        for (const char* s : {"ZI", "IZ", "XX", "ZZ", "XI"}) {
            terms.push_back({rng.uniform() - 0.5, PauliString(s)});
        }
        apps::GspProblem p;
        p.hamiltonian = PauliHamiltonian(terms);
        const DenseOperator h = ham_to_dense(p.hamiltonian);
        const Eigensystem es = eigensystem(h);
        p.initial_state = StateVector::from_label("++");
        const double ov = apps::ground_overlap2(h, p.initial_state);
        if (es.values(1) - es.values(0) < 0.1 || ov < 0.05) {
            continue;
        }
        p.e0 = es.values(0);
        p.gap = es.values(1) - es.values(0);
        p.eta = std::min(1.0 / std::sqrt(2.0), std::sqrt(ov));
        p.eps_g = 0.0;
        const AnalogGspResult r = analog_gsp(p, 0.01);
        const StateVector v0 = apps::ground_projection(h, p.initial_state);
        EXPECT_LE(apps::phase_aligned_distance(r.state.amplitudes(), v0.amplitudes()), 0.01 + GridSpec{}.grid_tol) << trial;
        ++checked;
    }
    EXPECT_GE(checked, 3);
}

TEST(AnalogGsp, CoarseGridRejected)
{
    GridSpec spec;
    spec.z_max = 2.0;
    EXPECT_THROW(analog_gsp(toy("+"), 0.01, spec), ConvergenceError);
}

TEST(AnalogQls, RingOnPauliZ)
{
    apps::QlsProblem p;
    p.hamiltonian = PauliHamiltonian::parse("Z");
    p.kappa = 1.0;
    p.b = StateVector::from_label("0");
    const AnalogQlsResult r = analog_qls(p, 0.01, QlsAncilla::ring);
    Vector expect = Vector::Zero(2);
    expect(0) = 1.0 / r.bigT;
    EXPECT_LE((r.component - expect).norm(), 2.0 * 0.01 / r.bigT);
    EXPECT_DOUBLE_EQ(r.bigT, ring_time(1.0, 0.01));
}

TEST(AnalogQls, RingScalarSupBound)
{
    const ScalarSup s = ring_scalar_sup(8.0, 1e-2);
    EXPECT_DOUBLE_EQ(s.bigT, 8.0 * std::sqrt(2.0 * std::log(800.0)));
    EXPECT_LE(s.sup_error, 1e-2);
    EXPECT_EQ(s.ring.n % 2, 1);
}

TEST(AnalogQls, RingStateOnKappaFiveInstance)
{
    apps::QlsProblem p;
    p.hamiltonian = PauliHamiltonian::parse("0.6*ZI + 0.4*XX");
    p.kappa = 5.0;
    p.b = StateVector::from_label("00");
    const double eps = 0.01;
    const AnalogQlsResult r = analog_qls(p, eps, QlsAncilla::ring);
    const Vector oracle = apps::qls_solution(p) / r.bigT;
    EXPECT_NEAR((r.component - oracle).norm(), r.error_vs_oracle, 1e-15);
    EXPECT_LE(r.error_vs_oracle, 2.0 * eps / r.bigT);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.success_prob, r.component.squaredNorm(), 1e-15);
}

TEST(AnalogQls, GaussianClosedFormIdentity)
{
    const double bigT = 10.0;
    const double x = 0.5;
    GridSpec spec;
    const QlsGrids g = qls_grids(QlsAncilla::gaussian, spec, 1e-6, bigT);
    const cplx v = gaussian_inverse_scalar(x, bigT, g.first, g.second);
    EXPECT_NEAR(v.real(), 1.0 / std::sqrt(0.26), 1e-6);
    EXPECT_NEAR(v.imag(), 0.0, 1e-6);
    EXPECT_NEAR(1.0 / std::sqrt(0.26), 1.9611613513818404, 1e-15);
}

TEST(AnalogQls, GaussianTruncationBound)
{
    for (double kappa : {2.0, 5.0, 10.0}) {
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            EXPECT_LE(gaussian_truncation_error(1.0 / kappa, gaussian_time(kappa, eps)), eps) << kappa << " " << eps;
        }
    }
}

TEST(AnalogQls, GaussianOnPositiveDefinite)
{
    apps::QlsProblem p;
    p.hamiltonian = PauliHamiltonian::parse("0.55*I + 0.45*Z");
    p.kappa = 10.0;
    p.b = StateVector::from_label("+");
    const double eps = 0.01;
    const AnalogQlsResult r = analog_qls(p, eps, QlsAncilla::gaussian);
    EXPECT_LE(r.error_vs_oracle, 2.0 * eps / r.bigT);
    EXPECT_LE(r.grid_error, 1e-6);
    EXPECT_LE(r.error_vs_oracle, r.truncation_error + r.grid_error + 1e-15);
}

TEST(AnalogQls, GaussianRejectsIndefinite)
{
    apps::QlsProblem p;
    p.hamiltonian = PauliHamiltonian::parse("0.6*ZI + 0.4*XX");
    p.kappa = 5.0;
    p.b = StateVector::from_label("00");
    EXPECT_THROW(analog_qls(p, 0.01, QlsAncilla::gaussian), PreconditionError);
}
