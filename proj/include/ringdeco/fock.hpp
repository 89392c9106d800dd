#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "ringdeco/model.hpp"
#include "ringdeco/normal_modes.hpp"

namespace ringdeco {

inline constexpr int min_mode_cutoff = 8;
inline constexpr double leakage_threshold = 1e-8;  // population of the top two levels
inline constexpr double convergence_threshold = 1e-8;
inline constexpr int max_tensor_modes = 4;
inline constexpr int max_tensor_cutoff = 16;

struct TruncatedMode {
    int cutoff = 0;
    double delta = 0;        // 3 P^2 / (2 M^2 c^2)
    double energy_unit = 1;  // hbar omega_k, J
    Eigen::MatrixXd annihilation;
    // (a^dag a + 1/2) + (delta/2)(1/2)(a - a^dag)^2, in units of hbar omega_k.
    Eigen::MatrixXd hamiltonian;
};

Eigen::MatrixXd annihilation_matrix(int cutoff);

// Dimensionless mode (hbar omega_k = 1).
TruncatedMode build_mode_hamiltonian(double delta, int cutoff);
TruncatedMode build_mode_hamiltonian(std::int64_t k, double p_cm, int cutoff, const RingConfig& cfg);

// Eigensystem of one truncated mode, reused across times.
class VacuumPropagator {
public:
    VacuumPropagator(double delta, int cutoff);

    // exp(-i H tau)|0>; throws LeakageError when the top two levels hold >= 1e-8.
    Eigen::VectorXcd state(double omega_k_t) const;

    int cutoff() const { return static_cast<int>(energies_.size()); }

private:
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd energies_;
};

std::complex<double> vacuum_overlap(const VacuumPropagator& bra, const VacuumPropagator& ket, double omega_k_t);

// <0| exp(i H(delta1) tau) exp(-i H(delta2) tau) |0> with tau = omega_k t, by exact
// spectral propagation. Throws LeakageError when either propagated state puts
// >= 1e-8 population into the top two levels.
std::complex<double> vacuum_overlap_bruteforce(double delta1, double delta2, double omega_k_t, int cutoff);

std::complex<double> vacuum_overlap_bruteforce(std::int64_t k, double p1, double p2, double t, int cutoff,
                                               const RingConfig& cfg);

struct ConvergedOverlap {
    std::complex<double> value;    // at cutoff D
    double cutoff_difference = 0;  // |f(D) - f(2D)|
    bool accepted = false;         // difference < 1e-8
};

ConvergedOverlap vacuum_overlap_converged(double delta1, double delta2, double omega_k_t, int cutoff);

// exp((z* a^2 - z a^dag^2)/2) on a truncated basis, via the eigendecomposition of the
// Hermitian i x generator. Requires |z| <= 2; throws LeakageError when the squeezed
// vacuum reaches the top two levels.
Eigen::MatrixXcd squeeze_matrix(std::complex<double> z, int cutoff);

// <0| O_1 ... O_n |0> on the tensor product of the N-1 relative modes, with
// P_j = i sqrt(m hbar omega_j / 2)(a_j^dag - a_j). Requires n_modes = N-1 <= 4 and
// cutoff <= 16.
double multimode_vacuum_moment(int n_modes, std::span<const MomentumLabel> ops, int cutoff,
                               const RingConfig& cfg);

}  // namespace ringdeco
