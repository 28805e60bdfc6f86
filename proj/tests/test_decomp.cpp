#include <gtest/gtest.h>

#include "lcu/decomp/chebyshev.hpp"
#include "lcu/decomp/gaussian.hpp"
#include "lcu/decomp/inverse.hpp"
#include "lcu/decomp/taylor.hpp"
#include "lcu/estimator/robustness.hpp"
#include "lcu/walks/walk.hpp"

using namespace lcu;

namespace {

double gaussian_scalar_sup(const LcuDecomposition& lcu, double t)
{
    double worst = 0.0;
    for (double x : sup_grid({{-1.0, 1.0}}, 4001)) {
        worst = std::max(worst, std::abs(lcu_scalar(lcu, x) - std::exp(-t * x * x)));
    }
    return worst;
}

} // namespace

TEST(GaussianLcu, CentralCoefficient)
{
    const GaussianLcu g = gaussian_lcu(25.0, 1e-3);
    const auto& mid = g.lcu.terms()[static_cast<std::size_t>(g.m)];
    EXPECT_DOUBLE_EQ(mid.coefficient, g.delta_t / std::sqrt(2.0 * kPi));
    EXPECT_EQ(std::get<TimeEvolution>(mid.unitary.kind).duration, 0.0);
    EXPECT_EQ(g.lcu.size(), static_cast<std::size_t>(2 * g.m + 1));
}

TEST(GaussianLcu, ScheduleFormulas)
{
    const double t = 25.0;
    const double gamma = 1e-3;
    const GaussianLcu g = gaussian_lcu(t, gamma);
    const double l5 = std::log(5.0 / gamma);
    EXPECT_DOUBLE_EQ(g.delta_t, 1.0 / (std::sqrt(2.0 * t) + std::sqrt(2.0 * l5)));
    EXPECT_EQ(g.m, static_cast<int>(std::ceil(std::sqrt(2.0) * (std::sqrt(t) + std::sqrt(l5)) * std::sqrt(2.0 * std::log(4.0 / gamma)))));
    EXPECT_DOUBLE_EQ(g.tau_max, g.m * g.delta_t * std::sqrt(2.0 * t));
    const GaussianLcu lit = gaussian_lcu(t, gamma, GaussianTruncation::literal);
    EXPECT_EQ(lit.m, static_cast<int>(std::ceil(std::sqrt(2.0) * (std::sqrt(t) + std::sqrt(l5)) * std::sqrt(std::log(4.0 / gamma)))));
}

TEST(GaussianLcu, L1BelowOnePlusStep)
{
    for (double t : {1.0, 2.0, 25.0, 400.0}) {
        for (double gamma : {1e-1, 1e-3, 1e-6}) {
            const GaussianLcu g = gaussian_lcu(t, gamma);
            EXPECT_LE(g.lcu.l1_norm(), 1.0 + g.delta_t) << t << " " << gamma;
        }
    }
}

TEST(GaussianLcu, OperatorBoundOnPaddedHalfZ)
{
    const DenseOperator h = ham_to_dense(PauliHamiltonian::parse("0.5*ZII"));
    const GaussianLcu g = gaussian_lcu(25.0, 1e-3);
    const Matrix xm = realize_sum(g.lcu, eigensystem(h));
    const DenseOperator exact = matrix_function(h, [](double x) { return std::exp(-25.0 * x * x); });
    EXPECT_LE(spectral_norm(xm - exact.matrix()), 1e-3);
}

TEST(GaussianLcu, ScalarBoundAcrossParameters)
{
    for (double t : {1.0, 4.0, 25.0, 100.0}) {
        for (double gamma : {1e-2, 1e-3, 1e-5}) {
            const GaussianLcu g = gaussian_lcu(t, gamma);
            EXPECT_LE(gaussian_scalar_sup(g.lcu, t), gamma) << t << " " << gamma;
        }
    }
}

TEST(GaussianLcu, LiteralTruncationExceedsTarget)
{
    // The sqrt(ln(4/gamma)) cut leaves a tail of roughly 2.8 gamma at t = 25.
    const GaussianLcu g = gaussian_lcu(25.0, 1e-3, GaussianTruncation::literal);
    const double err = gaussian_scalar_sup(g.lcu, 25.0);
    EXPECT_GT(err, 1e-3);
    EXPECT_NEAR(err, 2.77e-3, 0.05e-3);
}

TEST(GaussianLcu, RejectsInvalidParameters)
{
    EXPECT_THROW(gaussian_lcu(0.5, 1e-3), PreconditionError);
    EXPECT_THROW(gaussian_lcu(2.0, 0.0), PreconditionError);
    EXPECT_THROW(gaussian_lcu(2.0, 1.0), PreconditionError);
}

TEST(InverseLcu, OddScalarFunction)
{
    const InverseLcu inv = inverse_lcu(10.0, 1e-2);
    for (double x : inverse_domain_grid(10.0, 24)) {
        EXPECT_LE(std::abs(lcu_scalar(inv.lcu, x) + lcu_scalar(inv.lcu, -x)), 1e-12);
    }
}

TEST(InverseLcu, SupErrorAtKappaTen)
{
    const InverseLcu inv = inverse_lcu(10.0, 1e-2);
    EXPECT_LE(inv.sup_error, 1e-2);
    const InverseGrid g{inv.j_count, inv.k_count, inv.delta_y, inv.delta_z};
    EXPECT_NEAR(inverse_sup_error(g, 10.0, 2000), inv.sup_error, 1e-15);
    // Term-by-term sums on a coarser subgrid, where the closed form is not used.
    for (double x : inverse_domain_grid(10.0, 40)) {
        const cplx v = lcu_scalar(inv.lcu, x);
        EXPECT_LE(std::abs(v.imag()), 1e-12);
        EXPECT_LE(std::abs(1.0 / x - v.real()), 1e-2) << x;
    }
}

TEST(InverseLcu, ClosedFormMatchesTermSum)
{
    const InverseLcu inv = inverse_lcu(5.0, 5e-2);
    const InverseGrid g{inv.j_count, inv.k_count, inv.delta_y, inv.delta_z};
    for (double x : {-0.9, -0.3, 0.2, 0.55, 1.0}) {
        EXPECT_NEAR(g.eval(x), lcu_scalar(inv.lcu, x).real(), 1e-10) << x;
    }
}

TEST(InverseLcu, MaxDurationIsGridCorner)
{
    const InverseLcu inv = inverse_lcu(10.0, 1e-2);
    double longest = 0.0;
    for (const auto& t : inv.lcu.terms()) {
        longest = std::max(longest, std::abs(std::get<TimeEvolution>(t.unitary.kind).duration));
    }
    EXPECT_DOUBLE_EQ(inv.tau_max, inv.y_max * inv.z_max);
    EXPECT_LE(longest, inv.tau_max);
    EXPECT_EQ(inv.lcu.size(), static_cast<std::size_t>(inv.j_count * 2 * inv.k_count));
}

TEST(InverseLcu, L1GrowsLikeKappaSqrtLog)
{
    const double gamma = 1e-2;
    for (double kappa : {2.0, 5.0, 10.0, 20.0}) {
        const InverseLcu inv = inverse_lcu(kappa, gamma);
        EXPECT_LE(inv.lcu.l1_norm(), 10.0 * kappa * std::sqrt(std::log(kappa / gamma))) << kappa;
    }
}

TEST(TaylorSegment, ZeroOrderWeightAndL1Bound)
{
    const PauliHamiltonian h = PauliHamiltonian::parse("0.3*X + 0.4*Z");
    for (long r : {1L, 2L, 5L}) {
        const TaylorSegment zero = taylor_segment(h, 1.0, r, 0);
        const double x = h.beta() / static_cast<double>(r);
        EXPECT_DOUBLE_EQ(zero.l1_norm(), std::sqrt(1.0 + x * x));
        const TaylorSegment seg = taylor_segment(h, 1.0, r, 10);
        EXPECT_LE(seg.l1_norm(), std::exp(x * x));
    }
}

TEST(TaylorSegment, EnumerationMatchesEvolution)
{
    const PauliHamiltonian h = PauliHamiltonian::parse("0.3*X + 0.4*Z");
    const TaylorSegment seg = taylor_segment(h, 1.0, 1, 8);
    const Matrix sum = realize_sum(seg.enumerate(), h);
    const Matrix exact = evolution(eigensystem(ham_to_dense(h)), 1.0);
    EXPECT_LE(spectral_norm(sum - exact), 1e-6);
    EXPECT_NEAR(seg.enumerate().l1_norm(), seg.l1_norm(), 1e-13);
}

TEST(TaylorSegment, NegativeTimeAndMultiQubit)
{
    const PauliHamiltonian h = PauliHamiltonian::parse("0.2*XZ - 0.3*ZZ + 0.1*YI");
    const TaylorSegment seg = taylor_segment(h, -0.7, 1, 9);
    const Matrix sum = realize_sum(seg.enumerate(), h);
    const Matrix exact = evolution(eigensystem(ham_to_dense(h)), -0.7);
    EXPECT_LE(spectral_norm(sum - exact), 1e-6);
}

TEST(TaylorSegment, DrawsAreEnumeratedTerms)
{
    const PauliHamiltonian h = PauliHamiltonian::parse("0.3*X + 0.4*Z");
    const TaylorSegment seg = taylor_segment(h, 1.0, 1, 4);
    const Eigensystem es = eigensystem(ham_to_dense(h));
    Stream rng(21);
    Matrix mean = Matrix::Zero(2, 2);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        mean += realize(seg.draw(rng), h).matrix();
    }
    mean *= seg.l1_norm() / n;
    const Matrix sum = realize_sum(seg.enumerate(), h);
    EXPECT_LE(spectral_norm(mean - sum), 5.0 * seg.l1_norm() / std::sqrt(double(n)));
    (void)es;
}

TEST(TaylorOrder, SmallestOrderMeetingTail)
{
    const double x = 0.7;
    const int k = taylor_order(x, 1, 1e-6);
    const auto tail = [&](int kk) { return std::exp((kk + 1) * std::log(x) - std::lgamma(kk + 2.0) + x); };
    EXPECT_LE(tail(k), 1e-6);
    EXPECT_GT(tail(k - 1), 1e-6);
    EXPECT_EQ(taylor_order(0.0, 1, 1e-6), 0);
}

TEST(ChebyshevPower, SquareIdentity)
{
    const auto c = chebyshev_power_coeffs(2, 2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_DOUBLE_EQ(c[0], 0.5);
    EXPECT_DOUBLE_EQ(c[1], 0.5);
    for (double x : sup_grid({{-1.0, 1.0}}, 101)) {
        EXPECT_NEAR(chebyshev_power_eval(2, c, x), x * x, 1e-14);
    }
}

TEST(ChebyshevPower, LinearIdentity)
{
    const auto c = chebyshev_power_coeffs(1, 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_DOUBLE_EQ(c[0], 1.0);
}

TEST(ChebyshevPower, FullDegreeIsExact)
{
    for (long t : {3L, 8L, 15L}) {
        const auto c = chebyshev_power_coeffs(t, t);
        double l1 = 0.0;
        for (double v : c) {
            l1 += v;
        }
        EXPECT_NEAR(l1, 1.0, 1e-13);
        for (double x : sup_grid({{-1.0, 1.0}}, 51)) {
            EXPECT_NEAR(chebyshev_power_eval(t, c, x), std::pow(x, t), 1e-12);
        }
    }
}

TEST(ChebyshevPower, TruncationBound)
{
    const long t = 50;
    const double eps = 1e-6;
    const long d = power_degree(t, 2.0 / eps);
    EXPECT_EQ(d, matched_degree(t, static_cast<long>(std::ceil(std::sqrt(2.0 * 50.0 * std::log(2e6))))));
    const auto c = chebyshev_power_coeffs(t, d);
    double worst = 0.0;
    for (double x : sup_grid({{-1.0, 1.0}}, 20001)) {
        worst = std::max(worst, std::abs(std::pow(x, t) - chebyshev_power_eval(t, c, x)));
    }
    EXPECT_LE(worst, eps);
    for (long dd = 2; dd <= t; dd += 2) {
        const auto cc = chebyshev_power_coeffs(t, dd);
        double w = 0.0;
        for (double x : sup_grid({{-1.0, 1.0}}, 2001)) {
            w = std::max(w, std::abs(std::pow(x, t) - chebyshev_power_eval(t, cc, x)));
        }
        EXPECT_LE(w, 2.0 * std::exp(-double(dd * dd) / (2.0 * t)) + 1e-15) << dd;
    }
}

TEST(ChebyshevPower, ParityMismatchRejected)
{
    EXPECT_THROW(chebyshev_power_coeffs(4, 3), PreconditionError);
    EXPECT_THROW(chebyshev_power_coeffs(3, 5), PreconditionError);
    EXPECT_EQ(matched_degree(7, 4), 5);
    EXPECT_EQ(matched_degree(7, 20), 7);
}

TEST(ExpPoly, ZeroTimeIsConstant)
{
    const ExpPoly q = exp_poly_coeffs(0.0, 1e-3);
    for (double x : {-1.0, -0.2, 0.5, 1.0}) {
        EXPECT_NEAR(q.eval(x), 1.0, 1e-15);
    }
}

TEST(ExpPoly, EndpointAndSupBound)
{
    const double eps = 1e-4;
    const ExpPoly q = exp_poly_coeffs(9.0, eps);
    EXPECT_LE(q.eval(1.0), 1.0 + 1e-12);
    EXPECT_GE(q.eval(1.0), 1.0 - eps);
    double worst = 0.0;
    for (double x : sup_grid({{-1.0, 1.0}}, 4001)) {
        worst = std::max(worst, std::abs(std::exp(-9.0 * (1.0 - x)) - q.eval(x)));
    }
    EXPECT_LE(worst, eps);
    EXPECT_EQ(q.d, static_cast<long>(std::ceil(9.0 * std::exp(2.0))));
    EXPECT_GE(q.l1_norm(), 1.0 - eps / 4.0);
    EXPECT_LE(q.l1_norm(), 1.0 + 1e-12);
}

TEST(GaussianPoly, PointValuesAndSup)
{
    EXPECT_NEAR(gaussian_poly_eval(4.0, 1e-3, 0.0), 1.0, 1e-3);
    EXPECT_NEAR(gaussian_poly_eval(4.0, 1e-3, 1.0), std::exp(-4.0), 1e-3);
    const ExpPoly q = gaussian_poly(10.0, 1e-3);
    double worst = 0.0;
    for (double x : sup_grid({{-1.0, 1.0}}, 2001)) {
        worst = std::max(worst, std::abs(std::exp(-10.0 * x * x) - q.eval(1.0 - 2.0 * x * x)));
    }
    EXPECT_LE(worst, 1e-3);
}

TEST(Realize, IdentityAndZeroTime)
{
    const DenseOperator h = ham_to_dense(PauliHamiltonian::parse("0.3*XZ + 0.2*ZI"));
    EXPECT_LE((realize(UnitaryDescriptor{IdentityUnitary{}, 1.0}, h).matrix() - Matrix::Identity(4, 4)).norm(), 0.0);
    EXPECT_LE((realize(UnitaryDescriptor{TimeEvolution{0.0}, 1.0}, h).matrix() - Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Realize, WalkPowerIsRepeatedProduct)
{
    Stream rng(4);
    const walks::WalkOperator w = walks::build_walk(walks::MarkovChain::random_reversible(4, rng));
    const DenseOperator v2 = realize(UnitaryDescriptor{WalkPower{2}, 1.0}, WalkContext{w.v});
    EXPECT_LE((v2.matrix() - w.v.matrix() * w.v.matrix()).norm(), 1e-13);
    const DenseOperator v5 = realize(UnitaryDescriptor{WalkPower{5}, 1.0}, WalkContext{w.v});
    Matrix p = Matrix::Identity(w.edge_dim(), w.edge_dim());
    for (int k = 0; k < 5; ++k) {
        p = w.v.matrix() * p;
    }
    EXPECT_LE((v5.matrix() - p).norm(), 1e-12);
}

TEST(Realize, IncompatibleContextThrows)
{
    const DenseOperator h = ham_to_dense(PauliHamiltonian::parse("0.5*Z"));
    EXPECT_THROW(realize(UnitaryDescriptor{WalkPower{1}, 1.0}, h), PreconditionError);
    EXPECT_THROW(lcu_scalar(LcuDecomposition({{1.0, {WalkPower{1}, 1.0}}}, 0.0), 0.3), PreconditionError);
}

TEST(LcuDecomposition, RejectsBadTerms)
{
    EXPECT_THROW(LcuDecomposition({}, 0.0), PreconditionError);
    EXPECT_THROW(LcuDecomposition({{-1.0, {IdentityUnitary{}, 1.0}}}, 0.0), PreconditionError);
    EXPECT_THROW(LcuDecomposition({{1.0, {IdentityUnitary{}, 2.0}}}, 0.0), PreconditionError);
}

TEST(WalkLcus, PowerAndExpMatchPolynomials)
{
    Stream rng(8);
    const walks::WalkOperator w = walks::build_walk(walks::lazy(walks::MarkovChain::random_reversible(4, rng)));
    const Eigensystem es = eigensystem(w.d);
    const long t = 6;
    const LcuDecomposition pl = power_walk_lcu(t, 4, 0.0);
    const Matrix block = walks::top_block(realize_sum(pl, WalkContext{w.v}), w.n);
    const auto c = chebyshev_power_coeffs(t, 4);
    const Matrix poly = apply_function(es, [&](double x) { return chebyshev_power_eval(t, c, x); });
    EXPECT_LE(spectral_norm(block - poly), 1e-10);

    const ExpPoly q = exp_poly_coeffs(2.0, 1e-2);
    const LcuDecomposition el = exp_walk_lcu(q, 1e-2);
    EXPECT_NEAR(el.l1_norm(), q.l1_norm(), 1e-12);
    const Matrix eblock = walks::top_block(realize_sum(el, WalkContext{w.v}), w.n);
    const Matrix epoly = apply_function(es, [&](double x) { return q.eval(x); });
    EXPECT_LE(spectral_norm(eblock - epoly), 1e-9);
}
