#include "raman/squeeze_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "raman/errors.hpp"
#include "raman/quadrature.hpp"

namespace raman {

namespace {

// Below this G^2 - 1 the map creates no pairs worth reporting.
constexpr double kNoPairs = 1e-14;

void check_range(double eta, double r, const char* where)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error(std::string(where) + ": eta must lie in [0, 1], got " + std::to_string(eta));
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::domain_error(std::string(where) + ": r must be finite and >= 0, got " + std::to_string(r));
}

ModeVector mix(std::complex<double> ca, const ModeVector& a, std::complex<double> cb, const ModeVector& b)
{
    ModeVector out;
    out.spin = ca * a.spin + cb * b.spin;
    out.cavity = ca * a.cavity + cb * b.cavity;
    const std::size_t n = std::max(a.field.size(), b.field.size());
    out.field.assign(n, {});
    for (std::size_t i = 0; i < a.field.size(); ++i)
        out.field[i] += ca * a.field[i];
    for (std::size_t i = 0; i < b.field.size(); ++i)
        out.field[i] += cb * b.field[i];
    return out;
}

using Vector3 = Eigen::Vector3d;

// (field, spin, running integral of field) with a field input held constant over the step.
Vector3 forced_rhs(const Vector3& x, double k, double input)
{
    return Vector3(-0.5 * x[0] + k * x[1] + input, k * x[0], x[0]);
}

Vector3 forced_step(const CouplingProfile& coupling, std::size_t i, const Vector3& x, double input)
{
    const double h = coupling.grid().step();
    const double k0 = coupling.at(i);
    const double km = coupling.midpoint(i);
    const double k1 = coupling.at(i + 1);
    const Vector3 s1 = forced_rhs(x, k0, input);
    const Vector3 s2 = forced_rhs(x + 0.5 * h * s1, km, input);
    const Vector3 s3 = forced_rhs(x + 0.5 * h * s2, km, input);
    const Vector3 s4 = forced_rhs(x + h * s3, k1, input);
    return x + (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
}

struct BinnedResponse {
    double field_final;
    double spin_final;
    std::vector<double> bin_integrals; ///< int over each bin of the intracavity field
};

BinnedResponse respond(const CouplingProfile& coupling, std::size_t steps_per_bin, std::size_t n_bins,
                       const Vector3& initial, std::size_t first_step, std::size_t input_bin, double input)
{
    BinnedResponse out{0.0, 0.0, std::vector<double>(n_bins, 0.0)};
    Vector3 x = initial;
    const std::size_t n = coupling.grid().n_steps();
    for (std::size_t i = first_step; i < n; ++i) {
        const std::size_t bin = i / steps_per_bin;
        const double u = (bin == input_bin) ? input : 0.0;
        const double before = x[2];
        x = forced_step(coupling, i, x, u);
        if (!x.allFinite())
            throw NumericalError("discrete Bogolyubov solve became non-finite at step " + std::to_string(i));
        out.bin_integrals[bin] += x[2] - before;
    }
    out.field_final = x[0];
    out.spin_final = x[1];
    return out;
}

} // namespace

SqueezeFactor squeeze_factor(double g_ss_final)
{
    if (!std::isfinite(g_ss_final) || g_ss_final < 1.0)
        throw NumericalError("G_SS(T,0) = " + std::to_string(g_ss_final)
                             + " violates the commutator bound |G| >= 1");
    const double root = std::sqrt(g_ss_final * g_ss_final - 1.0);
    const double e_plus = g_ss_final + root;
    return {std::log(e_plus), e_plus, 1.0 / e_plus};
}

double retrieval_efficiency(const GreenSet& greens)
{
    const double g = greens.g_ss_final();
    const double denom = g * g - 1.0;
    if (!(denom > 0.0))
        throw NumericalError("retrieval efficiency undefined: G_SS(T,0)^2 - 1 = " + std::to_string(denom));
    const double e = greens.g_es_final();
    return 1.0 - e * e / denom;
}

double duan_variance(double eta, double r)
{
    check_range(eta, r, "duan_variance");
    const double s = std::sqrt(eta);
    return 0.25 * ((s - 1.0) * (s - 1.0) * std::exp(2.0 * r) + (s + 1.0) * (s + 1.0) * std::exp(-2.0 * r)
                   + 2.0 * (1.0 - eta));
}

double photon_number(double eta, double r)
{
    check_range(eta, r, "photon_number");
    // cosh 2r - 1 = 2 sinh^2 r, without the cancellation at small r
    const double sh = std::sinh(r);
    return eta * sh * sh;
}

SqueezeReport analyze(const GreenSet& greens)
{
    SqueezeReport rep;
    rep.g_ss_final = greens.g_ss_final();
    const SqueezeFactor sf = squeeze_factor(rep.g_ss_final);
    rep.r = sf.r;
    rep.e_r_plus = sf.e_plus;
    rep.e_r_minus = sf.e_minus;
    rep.eta = (rep.g_ss_final * rep.g_ss_final - 1.0 > kNoPairs) ? retrieval_efficiency(greens) : 1.0;
    rep.eta = std::clamp(rep.eta, 0.0, 1.0);
    rep.n0 = photon_number(rep.eta, rep.r);
    rep.duan = duan_variance(rep.eta, rep.r);
    rep.n1 = greens.input_norm();
    rep.n2 = greens.output_norm();
    rep.xi_g = rep.g_ss_final < 0.0 ? 2.0 * std::numbers::pi : 0.0;
    return rep;
}

double ModeVector::norm_squared(double step) const
{
    std::vector<double> density(field.size());
    for (std::size_t i = 0; i < field.size(); ++i)
        density[i] = std::norm(field[i]);
    return std::norm(spin) + std::norm(cavity) + trapezoid(density, step);
}

BlochMessiah bloch_messiah_small(const GreenSet& greens)
{
    BlochMessiah bm;
    const double g = greens.g_ss_final();
    bm.a_diag = std::abs(g);
    bm.n1 = greens.input_norm();
    bm.n2 = greens.output_norm();
    if (g * g - 1.0 <= kNoPairs) {
        bm.b_diag = 0.0;
        return bm;
    }
    if (!(bm.n1 > 0.0) || !(bm.n2 > 0.0))
        throw NumericalError("Bloch-Messiah norms must be positive: N1 = " + std::to_string(bm.n1)
                             + ", N2 = " + std::to_string(bm.n2));
    bm.squeezed = true;
    bm.b_diag = std::sqrt(g * g - 1.0);
    bm.xi_g = g < 0.0 ? 2.0 * std::numbers::pi : 0.0;

    const std::size_t n = greens.grid.n_points();
    const double in_scale = 1.0 / std::sqrt(bm.n1);
    const double out_scale = 1.0 / std::sqrt(bm.n2);

    ModeVector in1;
    in1.cavity = greens.g_se_row.front() * in_scale;
    in1.field.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        in1.field[j] = greens.g_se_row[j] * in_scale;
    ModeVector in2;
    in2.spin = 1.0;

    ModeVector out1;
    out1.spin = 1.0;
    ModeVector out2;
    out2.cavity = greens.g_es.back() * out_scale;
    out2.field.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out2.field[i] = greens.g_es[i] * out_scale;

    bm.in_primed = {in1, in2};
    bm.out_primed = {out1, out2};

    // I = D^* I', O = D O' with D = e^{i xi/2}/sqrt2 [[1, 1], [i, -i]].
    using namespace std::complex_literals;
    const std::complex<double> phase = std::polar(1.0 / std::numbers::sqrt2, 0.5 * bm.xi_g);
    const std::complex<double> phase_c = std::conj(phase);
    bm.in_eigen = {mix(phase_c, in1, phase_c, in2), mix(-1i * phase_c, in1, 1i * phase_c, in2)};
    bm.out_eigen = {mix(phase, out1, phase, out2), mix(1i * phase, out1, -1i * phase, out2)};
    return bm;
}

DiscreteBogolyubov discrete_bogolyubov(const CouplingProfile& coupling, std::size_t n_bins)
{
    if (n_bins == 0 || n_bins > DiscreteBogolyubov::kMaxBins)
        throw UsageError("bin count must lie in [1, " + std::to_string(DiscreteBogolyubov::kMaxBins)
                         + "], got " + std::to_string(n_bins));
    const TimeGrid& grid = coupling.grid();
    if (grid.n_steps() % n_bins != 0)
        throw UsageError("grid steps (" + std::to_string(grid.n_steps()) + ") must be a multiple of bins ("
                         + std::to_string(n_bins) + ")");

    const std::size_t steps_per_bin = grid.n_steps() / n_bins;
    const double bin_width = grid.duration() / static_cast<double>(n_bins);
    const double bin_scale = 1.0 / std::sqrt(bin_width);
    const std::size_t no_input = n_bins;

    DiscreteBogolyubov db;
    db.dim = n_bins + 2;
    db.a_mat = Eigen::MatrixXd::Zero(db.dim, db.dim);
    db.b_mat = Eigen::MatrixXd::Zero(db.dim, db.dim);
    constexpr std::size_t S = DiscreteBogolyubov::kSpinIndex;
    constexpr std::size_t E = DiscreteBogolyubov::kCavityIndex;
    constexpr std::size_t F = DiscreteBogolyubov::kFirstBin;

    // The real-reduced map sends field amplitudes to S^dag and S^dag to the
    // fields, so every field <-> spin entry lands in B.
    {
        const BinnedResponse resp = respond(coupling, steps_per_bin, n_bins, Vector3(0.0, 1.0, 0.0), 0, no_input, 0.0);
        db.a_mat(S, S) = resp.spin_final;
        db.b_mat(E, S) = resp.field_final;
        for (std::size_t i = 0; i < n_bins; ++i)
            db.b_mat(F + i, S) = resp.bin_integrals[i] * bin_scale;
    }
    {
        const BinnedResponse resp = respond(coupling, steps_per_bin, n_bins, Vector3(1.0, 0.0, 0.0), 0, no_input, 0.0);
        db.b_mat(S, E) = resp.spin_final;
        db.a_mat(E, E) = resp.field_final;
        for (std::size_t i = 0; i < n_bins; ++i)
            db.a_mat(F + i, E) = resp.bin_integrals[i] * bin_scale;
    }
    for (std::size_t j = 0; j < n_bins; ++j) {
        const BinnedResponse resp = respond(coupling, steps_per_bin, n_bins, Vector3::Zero(),
                                            j * steps_per_bin, j, bin_scale);
        db.b_mat(S, F + j) = resp.spin_final;
        db.a_mat(E, F + j) = resp.field_final;
        // output = intracavity field minus the reflected input on the same bin
        for (std::size_t i = j; i < n_bins; ++i)
            db.a_mat(F + i, F + j) = resp.bin_integrals[i] * bin_scale - (i == j ? 1.0 : 0.0);
    }
    return db;
}

SymplecticResiduals symplectic_residuals(const DiscreteBogolyubov& db)
{
    const Eigen::MatrixXd& a = db.a_mat;
    const Eigen::MatrixXd& b = db.b_mat;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(db.dim, db.dim);
    const double norm = (a * a.transpose() - b * b.transpose() - id).cwiseAbs().maxCoeff();
    const double sym = (a * b.transpose() - b * a.transpose()).cwiseAbs().maxCoeff();
    return {norm, sym};
}

std::vector<double> singular_values(const Eigen::MatrixXd& matrix)
{
    Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
    const Eigen::VectorXd& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::vector<double> squeezing_history(const GreenSet& greens)
{
    std::vector<double> r(greens.g_ss.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = std::acosh(std::max(greens.g_ss[i], 1.0));
    return r;
}

std::vector<double> squeezing_history(const CouplingProfile& coupling)
{
    const ForwardGreens fwd = green_forward(coupling);
    std::vector<double> r(fwd.g_ss.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = std::acosh(std::max(fwd.g_ss[i], 1.0));
    return r;
}

} // namespace raman
