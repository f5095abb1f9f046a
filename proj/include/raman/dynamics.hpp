#pragma once

// Real-valued linear system for the cavity field and the collective spin
// in dimensionless time (tau = 2*kappa*t):
//
//   dE/dtau  = -E/2 + k(tau) S^dag + E_in(tau)
//   dS^dag/dtau = k(tau) E
//
// where k is the real-reduced coupling. State vectors are ordered
// (field, spin).

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "raman/time_grid.hpp"

namespace raman {

using Matrix2 = Eigen::Matrix2d;

inline constexpr std::size_t kField = 0;
inline constexpr std::size_t kSpin = 1;

/// Sampled real coupling k(tau_i) together with q_i = duration * k_i, the
/// control strength on the fixed physical scale.
class CouplingProfile {
public:
    CouplingProfile(TimeGrid grid, std::vector<double> k_tilde);

    static CouplingProfile zero(const TimeGrid& grid);
    static CouplingProfile constant(const TimeGrid& grid, double value);

    const TimeGrid& grid() const { return grid_; }
    std::span<const double> k_tilde() const { return k_; }
    std::span<const double> q() const { return q_; }

    double at(std::size_t i) const { return k_[i]; }

    /// Coupling at tau_i + step/2 by four-point Lagrange interpolation of
    /// the neighbouring samples (one-sided on the first and last interval).
    double midpoint(std::size_t i) const;

private:
    TimeGrid grid_;
    std::vector<double> k_;
    std::vector<double> q_;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<double> e_field;
    std::vector<double> s_dag;
};

/// Green's functions on the grid.
///   g_es[i]     = G_{E S^dag}(tau_i, 0)
///   g_ss[i]     = G_{S^dag S^dag}(tau_i, 0)
///   g_se_row[j] = G_{S^dag E}(T, tau_j)
///   g_ee_row[j] = G_{E E}(T, tau_j)
struct GreenSet {
    TimeGrid grid;
    std::vector<double> g_es;
    std::vector<double> g_ss;
    std::vector<double> g_se_row;
    std::vector<double> g_ee_row;

    double g_ss_final() const { return g_ss.back(); }
    double g_es_final() const { return g_es.back(); }

    /// |G_{S^dag E}(T,0)|^2 + int_0^T G_{S^dag E}(T,tau)^2 dtau
    double input_norm() const;
    /// |G_{E S^dag}(T,0)|^2 + int_0^T G_{E S^dag}(tau,0)^2 dtau
    double output_norm() const;
};

/// One classical RK4 step over [tau_i, tau_{i+1}] written as a matrix
/// acting on (field, spin).
Matrix2 step_matrix(const CouplingProfile& coupling, std::size_t i);

std::vector<Matrix2> step_matrices(const CouplingProfile& coupling);

Trajectory integrate_homogeneous(const CouplingProfile& coupling, double e0, double s0);

/// Fundamental matrix Phi(tau_to, tau_from).
Matrix2 propagator(const CouplingProfile& coupling, std::size_t i_from, std::size_t i_to);

struct ForwardGreens {
    std::vector<double> g_es;
    std::vector<double> g_ss;
};

ForwardGreens green_forward(const CouplingProfile& coupling);

struct AdjointRow {
    std::vector<double> g_se_row;
    std::vector<double> g_ee_row;
};

/// Response of the final field and spin to a unit field input injected at
/// each grid time, from one backward sweep over the step matrices.
AdjointRow green_adjoint_row(const CouplingProfile& coupling);

GreenSet compute_greens(const CouplingProfile& coupling);

} // namespace raman
