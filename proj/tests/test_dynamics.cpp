#include "raman/dynamics.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "raman/errors.hpp"
#include "raman/pulse_shaper.hpp"
#include "raman/quadrature.hpp"

using namespace raman;

namespace {

double max_error_vs_constant_oracle(double c, double duration, std::size_t steps)
{
    const TimeGrid grid(steps, duration);
    const Trajectory traj = integrate_homogeneous(CouplingProfile::constant(grid, c), 0.0, 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        const auto phi = oracle::constant_coupling_propagator(c, grid.tau(i));
        err = std::max(err, std::abs(traj.e_field[i] - phi[0][1]));
        err = std::max(err, std::abs(traj.s_dag[i] - phi[1][1]));
    }
    return err;
}

// Random smooth coupling: a few low-order sine modes.
CouplingProfile random_coupling(std::mt19937& rng, std::size_t steps, double duration)
{
    std::uniform_real_distribution<double> amp(-1.5, 1.5);
    const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    const TimeGrid grid(steps, duration);
    std::vector<double> k(grid.n_points());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double x = grid.fraction(i);
        k[i] = a1 * std::sin(std::numbers::pi * x) + a2 * std::sin(2 * std::numbers::pi * x) + a3 * std::cos(3 * std::numbers::pi * x);
    }
    return CouplingProfile(grid, std::move(k));
}

} // namespace

TEST(TimeGrid, RejectsDegenerateInput)
{
    EXPECT_THROW(TimeGrid(0, 1.0), UsageError);
    EXPECT_THROW(TimeGrid(16, 0.0), UsageError);
    EXPECT_THROW(TimeGrid(16, -2.0), UsageError);
    const TimeGrid g(8, 4.0);
    EXPECT_DOUBLE_EQ(g.step(), 0.5);
    EXPECT_DOUBLE_EQ(g.tau(8), 4.0);
    EXPECT_DOUBLE_EQ(g.fraction(4), 0.5);
}

TEST(CouplingProfile, QIsDurationTimesK)
{
    const TimeGrid grid(64, 8.0);
    std::vector<double> k(grid.n_points());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = std::sin(0.1 * static_cast<double>(i));
    const CouplingProfile c(grid, k);
    ASSERT_EQ(c.q().size(), grid.n_points());
    for (std::size_t i = 0; i < k.size(); ++i)
        EXPECT_DOUBLE_EQ(c.q()[i], 8.0 * k[i]);
    EXPECT_THROW(CouplingProfile(grid, std::vector<double>(3, 0.0)), UsageError);
}

TEST(CouplingProfile, MidpointInterpolationIsExactForCubics)
{
    const TimeGrid grid(10, 2.0);
    auto f = [](double t) { return 0.3 - t + 0.7 * t * t - 0.2 * t * t * t; };
    std::vector<double> k(grid.n_points());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = f(grid.tau(i));
    const CouplingProfile c(grid, k);
    for (std::size_t i = 0; i < grid.n_steps(); ++i)
        EXPECT_NEAR(c.midpoint(i), f(grid.tau(i) + 0.5 * grid.step()), 1e-13) << "interval " << i;
}

TEST(IntegrateHomogeneous, DecoupledCavityDecays)
{
    const TimeGrid grid(512, 6.0);
    const Trajectory traj = integrate_homogeneous(CouplingProfile::zero(grid), 1.0, 0.0);
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        EXPECT_NEAR(traj.e_field[i], oracle::rk4_decay(grid.step(), i), 1e-14);
        EXPECT_NEAR(traj.e_field[i], std::exp(-0.5 * grid.tau(i)), 1e-10);
        EXPECT_EQ(traj.s_dag[i], 0.0);
    }
}

TEST(IntegrateHomogeneous, DarkSpinIsStationary)
{
    const TimeGrid grid(128, 3.0);
    const Trajectory traj = integrate_homogeneous(CouplingProfile::zero(grid), 0.0, 1.0);
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        EXPECT_EQ(traj.e_field[i], 0.0);
        EXPECT_EQ(traj.s_dag[i], 1.0);
    }
}

TEST(IntegrateHomogeneous, MatchesMatrixExponentialForConstantCoupling)
{
    for (double c : {0.3, 1.0, 2.0})
        EXPECT_LT(max_error_vs_constant_oracle(c, 4.0, 2048), 1e-8) << "c = " << c;
}

TEST(IntegrateHomogeneous, FourthOrderConvergence)
{
    // Halving the step must cut the error by about 16.
    const double c = 2.0, duration = 4.0;
    double prev = max_error_vs_constant_oracle(c, duration, 128);
    for (std::size_t steps : {256u, 512u, 1024u}) {
        const double err = max_error_vs_constant_oracle(c, duration, steps);
        EXPECT_NEAR(prev / err, 16.0, 1.0) << "steps = " << steps;
        prev = err;
    }
}

TEST(IntegrateHomogeneous, NonFiniteCouplingFailsLoudly)
{
    const TimeGrid grid(64, 1.0);
    std::vector<double> k(grid.n_points(), 0.0);
    k[10] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(CouplingProfile(grid, k), NumericalError);

    // Finite but absurd coupling overflows the state.
    EXPECT_THROW(integrate_homogeneous(CouplingProfile::constant(TimeGrid(64, 1.0), 1e300), 0.0, 1.0),
                 NumericalError);
    EXPECT_THROW(integrate_homogeneous(CouplingProfile::zero(grid), std::numeric_limits<double>::infinity(), 0.0),
                 UsageError);
}

TEST(Propagator, IdentityAndDecoupledLimit)
{
    const TimeGrid grid(256, 5.0);
    const auto zero = CouplingProfile::zero(grid);
    EXPECT_TRUE(propagator(zero, 17, 17).isIdentity());
    const Matrix2 phi = propagator(zero, 0, grid.n_steps());
    EXPECT_NEAR(phi(0, 0), oracle::rk4_decay(grid.step(), grid.n_steps()), 1e-15);
    EXPECT_NEAR(phi(0, 0), std::exp(-2.5), 1e-10);
    EXPECT_NEAR(phi(1, 1), 1.0, 1e-15);
    EXPECT_EQ(phi(0, 1), 0.0);
    EXPECT_EQ(phi(1, 0), 0.0);
    EXPECT_THROW(propagator(zero, 5, 4), std::out_of_range);
    EXPECT_THROW(propagator(zero, 0, grid.n_points()), std::out_of_range);
}

TEST(Propagator, SemigroupAndLiouvilleDeterminant)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto coupling = random_coupling(rng, 600, 6.0);
        const Matrix2 ab = propagator(coupling, 50, 300);
        const Matrix2 bc = propagator(coupling, 300, 600);
        const Matrix2 ac = propagator(coupling, 50, 600);
        EXPECT_LT((bc * ab - ac).cwiseAbs().maxCoeff(), 1e-8);
        for (std::size_t i : {0u, 100u, 333u, 600u}) {
            const double det = propagator(coupling, 0, i).determinant();
            EXPECT_NEAR(det, std::exp(-0.5 * coupling.grid().tau(i)), 1e-8) << "i = " << i;
        }
    }
}

TEST(GreenForward, ZeroCouplingAndCommutatorBound)
{
    const TimeGrid grid(256, 4.0);
    const ForwardGreens zero = green_forward(CouplingProfile::zero(grid));
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        EXPECT_EQ(zero.g_es[i], 0.0);
        EXPECT_EQ(zero.g_ss[i], 1.0);
    }
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const ForwardGreens f = green_forward(random_coupling(rng, 1024, 8.0));
        EXPECT_EQ(f.g_es[0], 0.0);
        EXPECT_EQ(f.g_ss[0], 1.0);
        EXPECT_GE(f.g_ss.back(), 1.0);
    }
}

TEST(GreenForward, ExcitationBalanceHoldsForArbitraryCoupling)
{
    // S^2 - E^2 - 1 = int_0^tau E^2, checked against a fine Simpson sum of the
    // trajectory itself on a 4x denser run.
    std::mt19937 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        const auto coupling = random_coupling(rng, 4096, 4.0);
        const ForwardGreens f = green_forward(coupling);
        const std::size_t n = coupling.grid().n_steps();
        const double h = coupling.grid().step();
        double integral = 0.0;
        double worst = 0.0;
        for (std::size_t i = 2; i <= n; i += 2) {
            integral += h / 3.0 * (f.g_es[i - 2] * f.g_es[i - 2] + 4.0 * f.g_es[i - 1] * f.g_es[i - 1]
                                   + f.g_es[i] * f.g_es[i]);
            const double lhs = f.g_ss[i] * f.g_ss[i] - f.g_es[i] * f.g_es[i] - 1.0;
            worst = std::max(worst, std::abs(lhs - integral));
        }
        EXPECT_LT(worst, 1e-6) << "trial " << trial;
    }
}

TEST(GreenAdjointRow, DecoupledKernelAndInstantaneousResponse)
{
    const TimeGrid grid(400, 5.0);
    const AdjointRow row = green_adjoint_row(CouplingProfile::zero(grid));
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        EXPECT_EQ(row.g_se_row[j], 0.0);
        EXPECT_NEAR(row.g_ee_row[j], oracle::rk4_decay(grid.step(), grid.n_steps() - j), 1e-14);
    }
    std::mt19937 rng(5);
    const AdjointRow shaped = green_adjoint_row(random_coupling(rng, 400, 5.0));
    EXPECT_EQ(shaped.g_ee_row.back(), 1.0);
    EXPECT_EQ(shaped.g_se_row.back(), 0.0);
}

TEST(GreenAdjointRow, AgreesWithForwardPropagatorColumns)
{
    std::mt19937 rng(9);
    const auto coupling = random_coupling(rng, 300, 3.0);
    const AdjointRow row = green_adjoint_row(coupling);
    for (std::size_t j : {0u, 1u, 150u, 299u}) {
        const Matrix2 phi = propagator(coupling, j, 300);
        EXPECT_NEAR(row.g_ee_row[j], phi(kField, kField), 1e-12);
        EXPECT_NEAR(row.g_se_row[j], phi(kSpin, kField), 1e-12);
    }
}

TEST(GreenSet, InputNormIdentityForShapedCoupling)
{
    const TimeGrid grid(2048, 8.0);
    const SignalMode mode = make_signal_mode(grid);
    const auto coupling = synthesize_coupling(ShapingTarget::from_stretch(6.5), mode);
    const GreenSet greens = compute_greens(coupling);
    EXPECT_EQ(greens.g_es[0], 0.0);
    EXPECT_EQ(greens.g_ss[0], 1.0);
    const double expected = greens.g_ss_final() * greens.g_ss_final() - 1.0;
    EXPECT_NEAR(greens.input_norm() / expected, 1.0, 1e-6);
    EXPECT_NEAR(greens.output_norm() / expected, 1.0, 1e-6);
}

TEST(Quadrature, TrapezoidAndCorrectedRunningSum)
{
    const std::size_t n = 200;
    const double h = 2.0 / n;
    std::vector<double> f(n + 1), df(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = h * i;
        f[i] = std::exp(x);
        df[i] = std::exp(x);
    }
    EXPECT_NEAR(trapezoid(f, h), std::exp(2.0) - 1.0, 1e-4);
    const auto plain = cumulative_trapezoid(f, h);
    const auto corrected = cumulative_trapezoid_corrected(f, df, h);
    EXPECT_EQ(plain[0], 0.0);
    EXPECT_NEAR(plain.back(), trapezoid(f, h), 1e-12);
    EXPECT_NEAR(corrected.back(), std::exp(2.0) - 1.0, 1e-9);
    EXPECT_NEAR(corrected[100], std::exp(1.0) - 1.0, 1e-9);
}
