#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ringdeco/model.hpp"

namespace ringdeco {

enum class OverlapMethod {
    exact_determinant,
    second_order,
    fock_oracle,
};

std::string_view to_string(OverlapMethod method);

// An oscillator whose kinetic term is scaled by (1 - delta) is an oscillator of mass
// m/(1-delta) and frequency omega sqrt(1-delta); its ladder operators are the original
// ones squeezed by |r| = -ln(1-delta)/4 at phase pi.
struct EffectiveOscillator {
    double mass_ratio = 1;       // m'/m
    double frequency_ratio = 1;  // omega'/omega
    double squeeze_magnitude = 0;
    double squeeze_phase = 0;
};

EffectiveOscillator frequency_shift_to_squeeze(double delta);

// S(z) = exp((z* a^2 - z a^dag^2)/2) in normal-ordered form exp(plus L+) exp(log_coef L3)
// exp(minus L-), L+ = a^dag^2/2, L- = a^2/2, L3 = (a^dag a + 1/2)/2.
struct Su11Factors {
    std::complex<double> plus;
    double log_coef = 0;
    std::complex<double> minus;
};

Su11Factors su11_disentangle(std::complex<double> z);

// Parameters of the four-squeeze chain for one relative mode.
struct SqueezePhaseSet {
    double r1 = 0;
    double r2 = 0;
    double omega_k_p1 = 0;  // shifted frequency omega_k sqrt(1 - delta_1), rad/s
    double omega_k_p2 = 0;
    double time = 0;        // s

    double xi1_phase() const { return 3.141592653589793 - 2.0 * omega_k_p1 * time; }
    double xi2_phase() const { return 3.141592653589793 - 2.0 * omega_k_p2 * time; }
    std::complex<double> g1() const;  // exp(2i omega_k(P1) t) tanh r1
    std::complex<double> g2() const;  // exp(-2i omega_k(P2) t) tanh r2
};

// Maps a raw phase into (-pi, pi] for reporting.
double reduce_phase(double phase);

// Dimensionless entry point: delta_i = 3 P_i^2 / (2 M^2 c^2), omega_k and t in any
// consistent units (omega_k = 1 makes t the dimensionless omega_k t).
SqueezePhaseSet squeeze_phases(double delta1, double delta2, double omega_k, double t);

SqueezePhaseSet squeeze_phases(std::int64_t k, const MomentumSuperposition& state, double t,
                               const RingConfig& cfg);

using Matrix6cd = Eigen::Matrix<std::complex<double>, 6, 6>;

struct GaussianQuadraticForm {
    Matrix6cd a;
    double prefactor = 8;  // 8 / (cosh r1 cosh r2)
};

GaussianQuadraticForm assemble_gaussian_matrix(const SqueezePhaseSet& phases);
GaussianQuadraticForm assemble_gaussian_matrix(std::int64_t k, const MomentumSuperposition& state,
                                               double t, const RingConfig& cfg);

struct PivotedDeterminant {
    std::complex<double> value;
    double min_pivot = 0;  // smallest |U_ii| of the LU factorisation
    double max_pivot = 0;
};

PivotedDeterminant lu_determinant(const Matrix6cd& a);

struct ModeOverlap {
    std::complex<double> value;
    OverlapMethod method = OverlapMethod::exact_determinant;
    std::int64_t mode_index = 0;
};

// <0| exp(i H_k(P1) t/hbar) exp(-i H_k(P2) t/hbar) |0>, including the zero-point phase.
// The square root of det A is continued from t = 0; throws NumericError if det A
// (nearly) vanishes along the path.
std::complex<double> exact_overlap(double delta1, double delta2, double omega_k, double t);

// |f_k| only; needs no branch choice.
double exact_overlap_modulus(double delta1, double delta2, double omega_k, double t);

// Same as exact_overlap on an ascending time grid, tracking the branch incrementally.
std::vector<std::complex<double>> exact_overlap_trajectory(double delta1, double delta2,
                                                           double omega_k,
                                                           std::span<const double> times);

ModeOverlap mode_overlap_exact(std::int64_t k, const MomentumSuperposition& state, double t,
                               const RingConfig& cfg);

// 1 - (9/32) eps^2 (1 - cos 2 omega_k t), eps = dE / (M c^2). Throws ValidityError when
// the factor is not positive.
double second_order_overlap(double energy_ratio, double omega_k, double t);

ModeOverlap mode_overlap_approx(std::int64_t k, const MomentumSuperposition& state, double t,
                                const RingConfig& cfg);

struct ProductResult {
    double value = 0.5;    // 1/2 prod_k |f_k|
    double log_value = 0;  // ln of value (finite even when value underflows)
    double exponent = 0;   // ln(2 value)
    bool underflow = false;
};

// Exponents below this are reported as 0 with the underflow flag.
inline constexpr double underflow_log_threshold = -700.0;

ProductResult offdiag_product(const MomentumSuperposition& state, double t, const RingConfig& cfg,
                              OverlapMethod method);

}  // namespace ringdeco
