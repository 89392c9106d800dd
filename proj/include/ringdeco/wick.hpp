#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ringdeco/model.hpp"
#include "ringdeco/normal_modes.hpp"

namespace ringdeco {

// Largest ring for which Wick moments are evaluated (the W map is built densely).
inline constexpr std::int64_t max_wick_particles = 201;

// Largest operator product (the pairing sum has (n-1)!! terms).
inline constexpr std::size_t max_wick_operators = 12;

// Ground-state moments of commuting momentum operators by Wick pairing, with
// <P_j P_l> = delta_jl m hbar omega_j / 2. SI units.
class VacuumMomentEvaluator {
public:
    explicit VacuumMomentEvaluator(const RingConfig& cfg);

    double moment(std::span<const MomentumLabel> ops) const;

    // <O_a O_b> for two single-operator labels.
    std::complex<double> contraction(const MomentumLabel& a, const MomentumLabel& b) const;

    std::int64_t n_particles() const { return n_; }

private:
    using Sparse = std::vector<std::pair<std::int64_t, std::complex<double>>>;  // (mode index, coeff)
    const Sparse& expand(const MomentumLabel& label) const;

    std::int64_t n_ = 3;
    std::vector<double> variance_;      // m hbar omega_j / 2, index j-1
    std::vector<Sparse> diagonal_;      // P_k
    std::vector<Sparse> fourier_;       // p_k through W
};

double wick_vacuum_moment(std::span<const MomentumLabel> ops, const RingConfig& cfg);

// Index triples 1 <= k_i <= N-1 with k1 + k2 + k3 = q N (q = 1, 2), all orderings.
std::vector<std::array<std::int64_t, 3>> cubic_constraint_triples(std::int64_t n);

struct OppositeMomentumRates {
    double tau_sq_inv = 0;        // 1/s^2, quadratic (P^2) channel
    double tau_prime_sq_inv = 0;  // 1/s^2, cubic (linear-P) channel
    double ratio = 0;             // tau'/tau; +inf when the cubic channel vanishes
    // Reference values from the printed closed forms (read as rate-squared).
    double printed_tau_sq_inv = 0;
    double printed_tau_prime_sq_inv = 0;
    double printed_ratio = 0;
};

// Second-moment decay exp(-t^2/tau^2 - t^2/tau'^2) of <0|e^{iH(P1)t} e^{-iH(P2)t}|0>,
// with both rates taken from Wick moments of (H(P1) - H(P2))^2.
OppositeMomentumRates opposite_momentum_rates(const RingConfig& cfg, double p1, double p2);

}  // namespace ringdeco
