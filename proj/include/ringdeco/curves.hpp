#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringdeco/model.hpp"

namespace ringdeco {

struct Coherence {
    double value = 0.5;    // |rho_12|
    double log_value = 0;  // ln |rho_12|, finite even when value underflows
    double exponent = 0;   // ln(2 |rho_12|), kept separately for tiny decays
    bool underflow = false;
};

// 1/2 exp(-(N/N0)(1 - J0(4 omega t))). n0 may be +inf.
Coherence offdiag_largeN(double t, double n, double n0, double omega);

struct SmallTimeCoherence : Coherence {
    bool in_domain = true;  // omega t <= 0.1
};

// 1/2 exp(-4 N omega^2 t^2 / N0).
SmallTimeCoherence offdiag_smallt(double t, double n, double n0, double omega);

inline constexpr double small_time_domain = 0.1;  // omega t

// 2 sqrt2 M c^2 / (3 sqrt(N) |dE| omega); +inf when dE == 0.
double decoherence_time(const RingConfig& cfg, const MomentumSuperposition& state);

// 1/2 exp(-N/N0).
double plateau(double n, double n0);

// N/N0 = (9/32) N (dE/Mc^2)^2 without forming N0 (finite for astronomical N).
double n_over_n0(const RingConfig& cfg, const MomentumSuperposition& state);

// Packet width sigma_k^2 = hbar / (4 m omega sin(pi k/N)) of the free-particle initial state.
double free_particle_width_sq(std::int64_t k, const RingConfig& cfg);

// 9 hbar^2 / (16 sigma_k^4 m^2), evaluated from the widths as written.
double free_particle_coefficient_raw(std::int64_t k, const RingConfig& cfg);

// 9 omega^2 sin^2(pi k / N), the simplified form used in the sum.
double free_particle_coefficient(std::int64_t k, const RingConfig& cfg);

// 1/2 exp(-1/4 sum_k ln(1 + c_k (dE/Mc^2)^2 t^2)). Enumerates the modes.
Coherence free_particle_offdiag(double t, const RingConfig& cfg, const MomentumSuperposition& state);

enum class CurveMethod {
    large_n,
    product_approx,
    product_exact,
    free_particle,
    small_t,
};

std::string_view to_string(CurveMethod method);
CurveMethod parse_curve_method(std::string_view name);  // throws ConfigError

struct DecoherenceCurve {
    std::vector<double> times;   // s
    std::vector<double> values;  // |rho_12|
    std::vector<bool> underflow;
    CurveMethod method = CurveMethod::large_n;
    bool underflow_flag = false;
    std::vector<std::string> warnings;
};

DecoherenceCurve curve_sample(CurveMethod method, std::span<const double> times, const RingConfig& cfg,
                              const MomentumSuperposition& state);

}  // namespace ringdeco
