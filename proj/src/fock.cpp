#include "ringdeco/fock.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace ringdeco {

namespace {

using cd = std::complex<double>;

double top_population(const Eigen::VectorXcd& psi)
{
    const auto d = psi.size();
    return std::norm(psi(d - 1)) + std::norm(psi(d - 2));
}

void check_leakage(const Eigen::VectorXcd& psi, const char* what)
{
    const double pop = top_population(psi);
    if (!(pop < leakage_threshold))
        throw LeakageError(fmt::format("{}: top-two-level population {:.3e} >= {:.0e}; increase the cutoff",
                                       what, pop, leakage_threshold));
}

}  // namespace

Eigen::MatrixXd annihilation_matrix(int cutoff)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

TruncatedMode build_mode_hamiltonian(double delta, int cutoff)
{
    if (cutoff < min_mode_cutoff)
        throw ConfigError(fmt::format("cutoff must be >= {}, got {}", min_mode_cutoff, cutoff));
    if (!(delta < 1))
        throw ValidityError(fmt::format("3P^2/(2M^2c^2) = {} >= 1: mode Hamiltonian unbounded", delta));
    TruncatedMode mode;
    mode.cutoff = cutoff;
    mode.delta = delta;
    mode.annihilation = annihilation_matrix(cutoff);
    const Eigen::MatrixXd& a = mode.annihilation;
    const Eigen::MatrixXd x = a - a.transpose();
    // The square is taken on the truncated matrices, as a numerical model would.
    mode.hamiltonian = a.transpose() * a + 0.5 * Eigen::MatrixXd::Identity(cutoff, cutoff) + 0.25 * delta * x * x;
    return mode;
}

TruncatedMode build_mode_hamiltonian(std::int64_t k, double p_cm, int cutoff, const RingConfig& cfg)
{
    const std::int64_t n = cfg.enumerable_particles();
    if (k < 1 || k >= n)
        throw ConfigError(fmt::format("mode index {} outside 1..{}", k, n - 1));
    auto mode = build_mode_hamiltonian(expansion_parameter(p_cm, cfg.total_mass(), cfg.light_speed), cutoff);
    mode.energy_unit = cfg.hbar * mode_frequency(k, n, cfg.coupling);
    return mode;
}

VacuumPropagator::VacuumPropagator(double delta, int cutoff)
{
    const auto mode = build_mode_hamiltonian(delta, cutoff);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mode.hamiltonian);
    if (eig.info() != Eigen::Success)
        throw NumericError("mode Hamiltonian eigendecomposition failed");
    vectors_ = eig.eigenvectors();
    energies_ = eig.eigenvalues();
}

Eigen::VectorXcd VacuumPropagator::state(double omega_k_t) const
{
    // Row 0 of V holds the vacuum component of each eigenvector.
    Eigen::VectorXcd coeff(energies_.size());
    for (Eigen::Index i = 0; i < energies_.size(); ++i)
        coeff(i) = vectors_(0, i) * std::polar(1.0, -energies_(i) * omega_k_t);
    Eigen::VectorXcd psi = vectors_.cast<cd>() * coeff;
    check_leakage(psi, "vacuum propagation");
    return psi;
}

cd vacuum_overlap(const VacuumPropagator& bra, const VacuumPropagator& ket, double omega_k_t)
{
    return bra.state(omega_k_t).dot(ket.state(omega_k_t));  // dot conjugates the bra
}

cd vacuum_overlap_bruteforce(double delta1, double delta2, double omega_k_t, int cutoff)
{
    return vacuum_overlap(VacuumPropagator(delta1, cutoff), VacuumPropagator(delta2, cutoff), omega_k_t);
}

cd vacuum_overlap_bruteforce(std::int64_t k, double p1, double p2, double t, int cutoff, const RingConfig& cfg)
{
    const std::int64_t n = cfg.enumerable_particles();
    if (k < 1 || k >= n)
        throw ConfigError(fmt::format("mode index {} outside 1..{}", k, n - 1));
    const double m = cfg.total_mass();
    const double tau = mode_frequency(k, n, cfg.coupling) * t;
    return vacuum_overlap_bruteforce(expansion_parameter(p1, m, cfg.light_speed),
                                     expansion_parameter(p2, m, cfg.light_speed), tau, cutoff);
}

ConvergedOverlap vacuum_overlap_converged(double delta1, double delta2, double omega_k_t, int cutoff)
{
    ConvergedOverlap out;
    out.value = vacuum_overlap_bruteforce(delta1, delta2, omega_k_t, cutoff);
    const cd doubled = vacuum_overlap_bruteforce(delta1, delta2, omega_k_t, 2 * cutoff);
    out.cutoff_difference = std::abs(out.value - doubled);
    out.accepted = out.cutoff_difference < convergence_threshold;
    return out;
}

Eigen::MatrixXcd squeeze_matrix(cd z, int cutoff)
{
    if (!(std::abs(z) <= 2.0))
        throw ConfigError(fmt::format("squeeze_matrix requires |z| <= 2, got {}", std::abs(z)));
    if (cutoff < 2)
        throw ConfigError("squeeze_matrix requires cutoff >= 2");
    const Eigen::MatrixXcd a = annihilation_matrix(cutoff).cast<cd>();
    const Eigen::MatrixXcd ad = a.adjoint();
    const Eigen::MatrixXcd gen = 0.5 * (std::conj(z) * a * a - z * ad * ad);
    // gen is anti-Hermitian, so h = i gen is Hermitian and exp(gen) = V exp(-i L) V^dag.
    const Eigen::MatrixXcd h = cd{0.0, 1.0} * gen;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success)
        throw NumericError("squeeze generator eigendecomposition failed");
    Eigen::VectorXcd phases(cutoff);
    for (int i = 0; i < cutoff; ++i)
        phases(i) = std::polar(1.0, -eig.eigenvalues()(i));
    Eigen::MatrixXcd s = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    check_leakage(s.col(0), "squeeze_matrix");
    return s;
}

double multimode_vacuum_moment(int n_modes, std::span<const MomentumLabel> ops, int cutoff, const RingConfig& cfg)
{
    const std::int64_t n = cfg.enumerable_particles();
    if (n_modes != n - 1)
        throw ConfigError(fmt::format("a ring of N = {} has {} relative modes, not {}", n, n - 1, n_modes));
    if (n_modes > max_tensor_modes || cutoff > max_tensor_cutoff || cutoff < 2)
        throw ConfigError(fmt::format("tensor oracle limited to {} modes x {} levels (requested {} x {})",
                                      max_tensor_modes, max_tensor_cutoff, n_modes, cutoff));
    if (static_cast<int>(ops.size()) >= cutoff)
        throw LeakageError(fmt::format("{} operators can reach level {}; cutoff {} truncates the product",
                                       ops.size(), ops.size(), cutoff));

    const Eigen::MatrixXcd w = bogoliubov_matrix(static_cast<int>(n));
    std::vector<double> scale(static_cast<std::size_t>(n_modes));
    for (int j = 0; j < n_modes; ++j)
        scale[j] = std::sqrt(0.5 * cfg.particle_mass * cfg.hbar * mode_frequency(j + 1, n, cfg.coupling));

    std::vector<std::size_t> stride(static_cast<std::size_t>(n_modes));
    std::size_t dim = 1;
    for (int j = 0; j < n_modes; ++j) {
        stride[j] = dim;
        dim *= static_cast<std::size_t>(cutoff);
    }

    // Applies P_j = i s_j (a_j^dag - a_j) to psi.
    auto apply_momentum = [&](const std::vector<cd>& psi, int j) {
        std::vector<cd> out(dim, 0.0);
        const cd coeff{0.0, scale[j]};
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if (psi[idx] == 0.0)
                continue;
            const auto level = static_cast<int>((idx / stride[j]) % static_cast<std::size_t>(cutoff));
            if (level + 1 < cutoff)
                out[idx + stride[j]] += coeff * std::sqrt(static_cast<double>(level + 1)) * psi[idx];
            if (level > 0)
                out[idx - stride[j]] -= coeff * std::sqrt(static_cast<double>(level)) * psi[idx];
        }
        return out;
    };

    std::vector<cd> psi(dim, 0.0);
    psi[0] = 1.0;
    // Operators commute, but apply right to left as written.
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->k < 1 || it->k >= n)
            throw ConfigError(fmt::format("momentum label k = {} outside 1..{}", it->k, n - 1));
        std::vector<cd> next(dim, 0.0);
        for (int j = 0; j < n_modes; ++j) {
            cd c;
            if (it->basis == MomentumBasis::diagonal)
                c = (j + 1 == it->k) ? 1.0 : 0.0;
            else
                c = std::conj(w(j, it->k - 1));
            if (c == 0.0)
                continue;
            const auto term = apply_momentum(psi, j);
            for (std::size_t idx = 0; idx < dim; ++idx)
                next[idx] += c * term[idx];
        }
        psi = std::move(next);
    }
    return psi[0].real();
}

}  // namespace ringdeco
