#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ringdeco {

// Error hierarchy. The CLI maps these onto exit codes 2/3/4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Physical validity: the relativistic expansion or an approximation breaks down.
class ValidityError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// Fock truncation too small for the requested accuracy.
class LeakageError : public NumericError {
public:
    using NumericError::NumericError;
};

namespace codata {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double light_speed = 299792458.0;     // m/s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double carbon_mass = 1.99264687992e-26; // kg, 12 u
}  // namespace codata

// Largest N for which the N-1 relative modes are enumerated explicitly.
inline constexpr std::int64_t max_enumerated_particles = 1'000'000;

struct RingConfig {
    // Stored as floating point so astronomical particle numbers (1e78) fit.
    double n_particles = 3;
    double particle_mass = codata::carbon_mass;
    double coupling = 1e14;  // rad/s
    double light_speed = codata::light_speed;
    double hbar = codata::hbar;
    double boltzmann = codata::boltzmann;

    double total_mass() const { return n_particles * particle_mass; }

    // Throws ConfigError unless N >= 3 (integral below 2^53) and the constants are positive.
    // Parity is only required where modes are enumerated.
    void validate() const;

    // Positivity of m, omega, c, hbar, k_B only; for paths that never use the ring's
    // mode structure (the cat-state phase-space analysis).
    void validate_constants() const;

    // N as an integer, for code paths that enumerate the relative modes.
    // Throws ConfigError when N is not an odd integer <= max_enumerated_particles.
    std::int64_t enumerable_particles() const;
};

struct MomentumSuperposition {
    double p1 = 0;  // kg m/s
    double p2 = 0;
};

struct CatState {
    std::complex<double> alpha;
    std::complex<double> beta;
    double sigma = 1;  // m
};

using CollectiveState = std::variant<MomentumSuperposition, CatState>;

// Builds a momentum superposition from CM velocities, P = M V.
MomentumSuperposition from_velocities(const RingConfig& cfg, double v1, double v2);

// Throws ValidityError when 3P^2/(2M^2c^2) >= 1 for either branch, or sigma <= 0.
void validate_state(const RingConfig& cfg, const CollectiveState& state);

struct ModeSpectrum {
    std::vector<double> frequencies;  // omega_k for k = 1..N-1, index k-1

    double operator[](std::int64_t k) const { return frequencies[static_cast<std::size_t>(k - 1)]; }
    std::size_t size() const { return frequencies.size(); }
};

ModeSpectrum mode_frequencies(const RingConfig& cfg);

// omega_k = 2 omega sin(pi k / N), evaluated on the folded index min(k, N-k).
double mode_frequency(std::int64_t k, std::int64_t n, double coupling);

struct DerivedScalars {
    double delta_e = 0;      // J
    double n0 = 0;           // +inf when delta_e == 0
    double squeeze_r1 = 0;
    double squeeze_r2 = 0;
    double delta1 = 0;       // 3 P1^2 / (2 M^2 c^2)
    double delta2 = 0;
};

DerivedScalars derive_scalars(const RingConfig& cfg, const MomentumSuperposition& state);

// (P1^2 - P2^2) / (2M), sign preserved.
double kinetic_energy_diff(double p1, double p2, double m_total);

// Delta E / (M c^2) without forming M c^2 (safe for astronomical M).
double energy_gap_ratio(double p1, double p2, double m_total, double c);

// 32 M^2 c^4 / (9 dE^2); +inf when dE == 0.
double n0_bound(double delta_e, double m_total, double c);

// Mass-free form: 128 c^4 / (9 (V1^2 - V2^2)^2).
double n0_bound_from_velocities(double v1, double v2, double c);

// 3 P^2 / (2 M^2 c^2).
double expansion_parameter(double p, double m_total, double c);

// -1/4 ln(1 - 3P^2/2M^2c^2). Throws ValidityError when the argument of the log is <= 0.
double squeeze_magnitude(double p, double m_total, double c);

double bessel_j0(double x);

// 1 - J0(x) without cancellation for small |x|.
double one_minus_bessel_j0(double x);

struct TemperatureCheck {
    bool pass = false;
    double margin = 0;                 // (2 pi hbar omega / N) / (k_B T)
    double threshold_temperature = 0;  // K, where k_B T equals the level spacing
};

TemperatureCheck validate_low_temperature(const RingConfig& cfg, double temperature,
                                          double strictness = 10.0);

}  // namespace ringdeco
