#include "ringdeco/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace ringdeco {

namespace {

// Integers above this are not exactly representable, so parity cannot be checked.
constexpr double exact_integer_limit = 9007199254740992.0;  // 2^53

}  // namespace

void RingConfig::validate() const
{
    if (!(n_particles >= 3) || !std::isfinite(n_particles))
        throw ConfigError(fmt::format("n_particles must be >= 3, got {}", n_particles));
    if (n_particles < exact_integer_limit && std::floor(n_particles) != n_particles)
        throw ConfigError(fmt::format("n_particles must be an integer, got {}", n_particles));
    validate_constants();
}

void RingConfig::validate_constants() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigError(fmt::format("{} must be positive and finite, got {}", name, v));
    };
    positive(particle_mass, "particle_mass");
    positive(coupling, "coupling");
    positive(light_speed, "light_speed");
    positive(hbar, "hbar");
    positive(boltzmann, "boltzmann");
}

std::int64_t RingConfig::enumerable_particles() const
{
    validate();
    if (n_particles > static_cast<double>(max_enumerated_particles))
        throw ConfigError(fmt::format(
            "n_particles = {:.3g} is too large to enumerate modes (limit {}); use a closed-form method",
            n_particles, max_enumerated_particles));
    if (std::fmod(n_particles, 2.0) != 1.0)
        throw ConfigError(fmt::format("mode enumeration needs an odd particle number, got {}", n_particles));
    return static_cast<std::int64_t>(n_particles);
}

MomentumSuperposition from_velocities(const RingConfig& cfg, double v1, double v2)
{
    const double m = cfg.total_mass();
    return {m * v1, m * v2};
}

void validate_state(const RingConfig& cfg, const CollectiveState& state)
{
    if (const auto* ms = std::get_if<MomentumSuperposition>(&state)) {
        const double m = cfg.total_mass();
        for (double p : {ms->p1, ms->p2}) {
            const double delta = expansion_parameter(p, m, cfg.light_speed);
            if (!(delta < 1))
                throw ValidityError(fmt::format(
                    "3P^2/(2M^2c^2) = {} >= 1: relativistic expansion invalid for P = {}", delta, p));
        }
    } else {
        const auto& cat = std::get<CatState>(state);
        if (!(cat.sigma > 0))
            throw ValidityError(fmt::format("cat-state sigma must be positive, got {}", cat.sigma));
    }
}

double mode_frequency(std::int64_t k, std::int64_t n, double coupling)
{
    const std::int64_t folded = std::min(k, n - k);
    return 2.0 * coupling *
           std::sin(std::numbers::pi * static_cast<double>(folded) / static_cast<double>(n));
}

ModeSpectrum mode_frequencies(const RingConfig& cfg)
{
    const std::int64_t n = cfg.enumerable_particles();
    ModeSpectrum spectrum;
    spectrum.frequencies.resize(static_cast<std::size_t>(n - 1));
    for (std::int64_t k = 1; k < n; ++k)
        spectrum.frequencies[static_cast<std::size_t>(k - 1)] = mode_frequency(k, n, cfg.coupling);
    return spectrum;
}

double kinetic_energy_diff(double p1, double p2, double m_total)
{
    return (p1 - p2) * (p1 + p2) / (2.0 * m_total);
}

double energy_gap_ratio(double p1, double p2, double m_total, double c)
{
    const double u1 = p1 / (m_total * c);
    const double u2 = p2 / (m_total * c);
    return 0.5 * (u1 - u2) * (u1 + u2);
}

double n0_bound(double delta_e, double m_total, double c)
{
    if (delta_e == 0)
        return std::numeric_limits<double>::infinity();
    const double ratio = delta_e / m_total / (c * c);
    return 32.0 / (9.0 * ratio * ratio);
}

double n0_bound_from_velocities(double v1, double v2, double c)
{
    const double ratio = 0.5 * (v1 / c - v2 / c) * (v1 / c + v2 / c);
    if (ratio == 0)
        return std::numeric_limits<double>::infinity();
    return 32.0 / (9.0 * ratio * ratio);
}

double expansion_parameter(double p, double m_total, double c)
{
    const double u = p / (m_total * c);
    return 1.5 * u * u;
}

double squeeze_magnitude(double p, double m_total, double c)
{
    const double delta = expansion_parameter(p, m_total, c);
    if (!(delta < 1))
        throw ValidityError(fmt::format("3P^2/(2M^2c^2) = {} >= 1: squeeze undefined", delta));
    return -0.25 * std::log1p(-delta);
}

DerivedScalars derive_scalars(const RingConfig& cfg, const MomentumSuperposition& state)
{
    const double m = cfg.total_mass();
    const double c = cfg.light_speed;
    DerivedScalars out;
    out.delta_e = kinetic_energy_diff(state.p1, state.p2, m);
    const double ratio = energy_gap_ratio(state.p1, state.p2, m, c);
    out.n0 = ratio == 0 ? std::numeric_limits<double>::infinity() : 32.0 / (9.0 * ratio * ratio);
    out.delta1 = expansion_parameter(state.p1, m, c);
    out.delta2 = expansion_parameter(state.p2, m, c);
    out.squeeze_r1 = squeeze_magnitude(state.p1, m, c);
    out.squeeze_r2 = squeeze_magnitude(state.p2, m, c);
    return out;
}

TemperatureCheck validate_low_temperature(const RingConfig& cfg, double temperature, double strictness)
{
    if (temperature < 0)
        throw ConfigError("temperature must be non-negative");
    const double spacing = 2.0 * std::numbers::pi * cfg.hbar * cfg.coupling / cfg.n_particles;
    TemperatureCheck check;
    check.threshold_temperature = spacing / cfg.boltzmann;
    check.margin = temperature == 0 ? std::numeric_limits<double>::infinity()
                                    : spacing / (cfg.boltzmann * temperature);
    check.pass = check.margin > strictness;
    return check;
}

}  // namespace ringdeco
