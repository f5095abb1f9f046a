#include "raman/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "raman/errors.hpp"
#include "raman/quadrature.hpp"

namespace raman {

namespace {

Matrix2 system_matrix(double k)
{
    Matrix2 m;
    m << -0.5, k,
         k, 0.0;
    return m;
}

bool all_finite(const Matrix2& m)
{
    return m.allFinite();
}

[[noreturn]] void fail_non_finite(const TimeGrid& grid, std::size_t i, const char* what)
{
    std::ostringstream msg;
    msg << what << " became non-finite at step " << i << " (tau = " << grid.tau(i) << ")";
    throw NumericalError(msg.str());
}

} // namespace

CouplingProfile::CouplingProfile(TimeGrid grid, std::vector<double> k_tilde)
    : grid_(grid), k_(std::move(k_tilde))
{
    if (k_.size() != grid_.n_points())
        throw UsageError("coupling has " + std::to_string(k_.size()) + " samples, grid needs "
                         + std::to_string(grid_.n_points()));
    q_.resize(k_.size());
    for (std::size_t i = 0; i < k_.size(); ++i) {
        if (!std::isfinite(k_[i]))
            throw NumericalError("coupling sample " + std::to_string(i) + " is not finite");
        q_[i] = grid_.duration() * k_[i];
    }
}

CouplingProfile CouplingProfile::zero(const TimeGrid& grid)
{
    return CouplingProfile(grid, std::vector<double>(grid.n_points(), 0.0));
}

CouplingProfile CouplingProfile::constant(const TimeGrid& grid, double value)
{
    return CouplingProfile(grid, std::vector<double>(grid.n_points(), value));
}

double CouplingProfile::midpoint(std::size_t i) const
{
    const std::size_t n = grid_.n_steps();
    if (n < 3)
        return 0.5 * (k_[i] + k_[i + 1]);
    if (i == 0)
        return (5.0 * k_[0] + 15.0 * k_[1] - 5.0 * k_[2] + k_[3]) / 16.0;
    if (i == n - 1)
        return (k_[n - 3] - 5.0 * k_[n - 2] + 15.0 * k_[n - 1] + 5.0 * k_[n]) / 16.0;
    return (-k_[i - 1] + 9.0 * k_[i] + 9.0 * k_[i + 1] - k_[i + 2]) / 16.0;
}

double GreenSet::input_norm() const
{
    std::vector<double> sq(g_se_row.size());
    for (std::size_t j = 0; j < sq.size(); ++j)
        sq[j] = g_se_row[j] * g_se_row[j];
    return g_se_row.front() * g_se_row.front() + trapezoid(sq, grid.step());
}

double GreenSet::output_norm() const
{
    std::vector<double> sq(g_es.size());
    for (std::size_t i = 0; i < sq.size(); ++i)
        sq[i] = g_es[i] * g_es[i];
    return g_es.back() * g_es.back() + trapezoid(sq, grid.step());
}

Matrix2 step_matrix(const CouplingProfile& coupling, std::size_t i)
{
    const double h = coupling.grid().step();
    const Matrix2 m0 = system_matrix(coupling.at(i));
    const Matrix2 mm = system_matrix(coupling.midpoint(i));
    const Matrix2 m1 = system_matrix(coupling.at(i + 1));
    const Matrix2 id = Matrix2::Identity();

    const Matrix2 k1 = m0;
    const Matrix2 k2 = mm * (id + 0.5 * h * k1);
    const Matrix2 k3 = mm * (id + 0.5 * h * k2);
    const Matrix2 k4 = m1 * (id + h * k3);
    return id + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<Matrix2> step_matrices(const CouplingProfile& coupling)
{
    const std::size_t n = coupling.grid().n_steps();
    std::vector<Matrix2> steps(n);
    for (std::size_t i = 0; i < n; ++i) {
        steps[i] = step_matrix(coupling, i);
        if (!all_finite(steps[i]))
            fail_non_finite(coupling.grid(), i, "step matrix");
    }
    return steps;
}

Trajectory integrate_homogeneous(const CouplingProfile& coupling, double e0, double s0)
{
    if (!std::isfinite(e0) || !std::isfinite(s0))
        throw UsageError("initial values must be finite");
    const TimeGrid& grid = coupling.grid();
    Trajectory traj{grid, std::vector<double>(grid.n_points()), std::vector<double>(grid.n_points())};

    Eigen::Vector2d x(e0, s0);
    traj.e_field[0] = e0;
    traj.s_dag[0] = s0;
    for (std::size_t i = 0; i < grid.n_steps(); ++i) {
        x = step_matrix(coupling, i) * x;
        if (!x.allFinite())
            fail_non_finite(grid, i + 1, "state");
        traj.e_field[i + 1] = x[kField];
        traj.s_dag[i + 1] = x[kSpin];
    }
    return traj;
}

Matrix2 propagator(const CouplingProfile& coupling, std::size_t i_from, std::size_t i_to)
{
    const std::size_t n_points = coupling.grid().n_points();
    if (i_from >= n_points || i_to >= n_points)
        throw std::out_of_range("propagator: grid index out of range");
    if (i_from > i_to)
        throw std::out_of_range("propagator: i_from must not exceed i_to");

    Matrix2 phi = Matrix2::Identity();
    for (std::size_t i = i_from; i < i_to; ++i) {
        phi = step_matrix(coupling, i) * phi;
        if (!all_finite(phi))
            fail_non_finite(coupling.grid(), i + 1, "propagator");
    }
    return phi;
}

ForwardGreens green_forward(const CouplingProfile& coupling)
{
    Trajectory traj = integrate_homogeneous(coupling, 0.0, 1.0);
    return {std::move(traj.e_field), std::move(traj.s_dag)};
}

AdjointRow green_adjoint_row(const CouplingProfile& coupling)
{
    const std::size_t n = coupling.grid().n_steps();
    const std::vector<Matrix2> steps = step_matrices(coupling);

    AdjointRow row{std::vector<double>(n + 1), std::vector<double>(n + 1)};
    Matrix2 phi = Matrix2::Identity(); // Phi(T, tau_j)
    row.g_ee_row[n] = 1.0;
    row.g_se_row[n] = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        phi = phi * steps[j];
        if (!all_finite(phi))
            fail_non_finite(coupling.grid(), j, "adjoint propagator");
        row.g_ee_row[j] = phi(kField, kField);
        row.g_se_row[j] = phi(kSpin, kField);
    }
    return row;
}

GreenSet compute_greens(const CouplingProfile& coupling)
{
    ForwardGreens fwd = green_forward(coupling);
    AdjointRow adj = green_adjoint_row(coupling);
    return GreenSet{coupling.grid(), std::move(fwd.g_es), std::move(fwd.g_ss),
                    std::move(adj.g_se_row), std::move(adj.g_ee_row)};
}

} // namespace raman
