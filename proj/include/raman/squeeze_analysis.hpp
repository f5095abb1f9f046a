#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "raman/dynamics.hpp"

namespace raman {

struct SqueezeFactor {
    double r;
    double e_plus;  ///< e^{+r}
    double e_minus; ///< e^{-r}
};

/// e^{+-r} = |G| +- sqrt(|G|^2 - 1) with G = G_{S^dag S^dag}(T, 0).
/// Throws NumericalError when g_ss_final < 1 (commutator bound violated).
SqueezeFactor squeeze_factor(double g_ss_final);

/// eta = 1 - G_{E S^dag}(T,0)^2 / (G_{S^dag S^dag}(T,0)^2 - 1)
double retrieval_efficiency(const GreenSet& greens);

/// Duan inseparability variance for vacuum inputs:
///   V = [(sqrt(eta)-1)^2 e^{2r} + (sqrt(eta)+1)^2 e^{-2r} + 2(1-eta)] / 4
double duan_variance(double eta, double r);

/// Mean photon number of the signal, (eta/2)(cosh 2r - 1).
double photon_number(double eta, double r);

struct SqueezeReport {
    double r = 0.0;
    double e_r_plus = 1.0;
    double e_r_minus = 1.0;
    double n0 = 0.0;
    double eta = 1.0;
    double duan = 1.0;
    double g_ss_final = 1.0;
    double n1 = 0.0;
    double n2 = 0.0;
    double xi_g = 0.0;
};

/// Collects r, e^{+-r}, n0, eta, Duan variance and the Bogolyubov norms.
/// With no pair creation (G_{S^dag S^dag}(T,0) = 1) eta is reported as 1.
SqueezeReport analyze(const GreenSet& greens);

/// Linear functional over the complete mode set: spin amplitude, cavity
/// amplitude and a field density sampled on the time grid. Normalized so
/// |spin|^2 + |cavity|^2 + int |field|^2 = 1.
struct ModeVector {
    std::complex<double> spin{};
    std::complex<double> cavity{};
    std::vector<std::complex<double>> field;

    double norm_squared(double step) const;
};

/// Two-mode Bloch-Messiah reduction of the field/spin Bogolyubov map.
struct BlochMessiah {
    bool squeezed = false;
    double a_diag = 1.0; ///< A^(D)_{1,2}
    double b_diag = 0.0; ///< B^(D)_{1,2}
    double n1 = 0.0;
    double n2 = 0.0;
    double xi_g = 0.0;
    std::array<ModeVector, 2> in_primed;   ///< I'_1, I'_2
    std::array<ModeVector, 2> out_primed;  ///< O'_1, O'_2
    std::array<ModeVector, 2> in_eigen;    ///< I_1, I_2
    std::array<ModeVector, 2> out_eigen;   ///< O_1, O_2
};

/// Without pair creation the result has squeezed = false and empty modes.
BlochMessiah bloch_messiah_small(const GreenSet& greens);

/// Bogolyubov matrices a_out = A a_in + B a_in^dag over a discretized basis:
/// index 0 spin, index 1 cavity, then one bin-orthonormal field mode per bin
/// (inputs before, outputs after the interaction).
struct DiscreteBogolyubov {
    static constexpr std::size_t kSpinIndex = 0;
    static constexpr std::size_t kCavityIndex = 1;
    static constexpr std::size_t kFirstBin = 2;
    static constexpr std::size_t kMaxBins = 512;

    std::size_t dim = 0;
    Eigen::MatrixXd a_mat;
    Eigen::MatrixXd b_mat;
};

DiscreteBogolyubov discrete_bogolyubov(const CouplingProfile& coupling, std::size_t n_bins);

struct SymplecticResiduals {
    double norm_preservation; ///< max |A A^T - B B^T - I|
    double symmetry;          ///< max |A B^T - B A^T|
};

SymplecticResiduals symplectic_residuals(const DiscreteBogolyubov& bogolyubov);

/// Singular values in descending order.
std::vector<double> singular_values(const Eigen::MatrixXd& matrix);

/// r(tau_i) = arccosh(max(G_{S^dag S^dag}(tau_i, 0), 1)).
std::vector<double> squeezing_history(const CouplingProfile& coupling);
std::vector<double> squeezing_history(const GreenSet& greens);

} // namespace raman
