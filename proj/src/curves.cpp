#include "ringdeco/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ringdeco/squeeze.hpp"

namespace ringdeco {

namespace {

Coherence from_exponent(double exponent)
{
    Coherence c;
    c.log_value = std::log(0.5) + exponent;
    c.exponent = exponent;
    if (exponent < underflow_log_threshold) {
        c.value = 0.0;
        c.underflow = true;
    } else {
        c.value = 0.5 * std::exp(exponent);
    }
    return c;
}

double ratio_of(double n, double n0)
{
    if (std::isinf(n0))
        return 0.0;
    if (!(n0 > 0))
        throw ConfigError(fmt::format("N0 must be positive, got {}", n0));
    return std::exp(std::log(n) - std::log(n0));
}

}  // namespace

Coherence offdiag_largeN(double t, double n, double n0, double omega)
{
    if (t < 0)
        throw ConfigError("time must be non-negative");
    const double r = ratio_of(n, n0);
    if (r == 0.0)
        return from_exponent(0.0);
    return from_exponent(-r * one_minus_bessel_j0(4.0 * omega * t));
}

SmallTimeCoherence offdiag_smallt(double t, double n, double n0, double omega)
{
    if (t < 0)
        throw ConfigError("time must be non-negative");
    const double wt = omega * t;
    SmallTimeCoherence out;
    static_cast<Coherence&>(out) = from_exponent(-4.0 * ratio_of(n, n0) * wt * wt);
    out.in_domain = wt <= small_time_domain;
    return out;
}

double decoherence_time(const RingConfig& cfg, const MomentumSuperposition& state)
{
    cfg.validate();
    const double eps = energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed);
    if (eps == 0)
        return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::sqrt2 / (3.0 * std::sqrt(cfg.n_particles) * std::abs(eps) * cfg.coupling);
}

double plateau(double n, double n0)
{
    return from_exponent(-ratio_of(n, n0)).value;
}

double n_over_n0(const RingConfig& cfg, const MomentumSuperposition& state)
{
    const double eps = energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed);
    return 9.0 / 32.0 * cfg.n_particles * eps * eps;
}

double free_particle_width_sq(std::int64_t k, const RingConfig& cfg)
{
    const double n = cfg.n_particles;
    const double s = std::sin(std::numbers::pi * static_cast<double>(k) / n);
    return cfg.hbar / (4.0 * cfg.particle_mass * cfg.coupling * s);
}

double free_particle_coefficient_raw(std::int64_t k, const RingConfig& cfg)
{
    const double w2 = free_particle_width_sq(k, cfg);
    const double m = cfg.particle_mass;
    return 9.0 * cfg.hbar * cfg.hbar / (16.0 * w2 * w2 * m * m);
}

double free_particle_coefficient(std::int64_t k, const RingConfig& cfg)
{
    const double n = cfg.n_particles;
    const double s = std::sin(std::numbers::pi * static_cast<double>(std::min<double>(k, n - k)) / n);
    return 9.0 * cfg.coupling * cfg.coupling * s * s;
}

Coherence free_particle_offdiag(double t, const RingConfig& cfg, const MomentumSuperposition& state)
{
    if (t < 0)
        throw ConfigError("time must be non-negative");
    const std::int64_t n = cfg.enumerable_particles();
    const double eps = energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed);
    const double et2 = eps * eps * t * t;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= (n - 1) / 2; ++k)
        sum += 2.0 * std::log1p(free_particle_coefficient(k, cfg) * et2);
    return from_exponent(-0.25 * sum);
}

std::string_view to_string(CurveMethod method)
{
    switch (method) {
    case CurveMethod::large_n:
        return "large-N";
    case CurveMethod::product_approx:
        return "product-approx";
    case CurveMethod::product_exact:
        return "product-exact";
    case CurveMethod::free_particle:
        return "free-particle";
    case CurveMethod::small_t:
        return "small-t";
    }
    return "unknown";
}

CurveMethod parse_curve_method(std::string_view name)
{
    for (auto m : {CurveMethod::large_n, CurveMethod::product_approx, CurveMethod::product_exact,
                   CurveMethod::free_particle, CurveMethod::small_t}) {
        if (name == to_string(m))
            return m;
    }
    throw ConfigError(fmt::format(
        "unknown method '{}' (expected large-N, product-approx, product-exact, free-particle or small-t)",
        name));
}

DecoherenceCurve curve_sample(CurveMethod method, std::span<const double> times, const RingConfig& cfg,
                              const MomentumSuperposition& state)
{
    cfg.validate();
    validate_state(cfg, state);
    DecoherenceCurve curve;
    curve.method = method;
    if (times.empty())
        return curve;
    if (times.front() < 0 || !std::is_sorted(times.begin(), times.end()))
        throw ConfigError("curve times must be non-negative and ascending");

    const double omega = cfg.coupling;
    const double ratio = n_over_n0(cfg, state);
    const double n0 = ratio == 0 ? std::numeric_limits<double>::infinity() : cfg.n_particles / ratio;
    const double wt_max = omega * times.back();

    switch (method) {
    case CurveMethod::large_n:
        if (cfg.n_particles < 100)
            curve.warnings.push_back(
                fmt::format("large-N law used with N = {}; the mode sum is not well approximated by an integral",
                            cfg.n_particles));
        break;
    case CurveMethod::small_t:
        if (wt_max > small_time_domain)
            curve.warnings.push_back(fmt::format(
                "small-t law evaluated up to omega t = {:.6g}, beyond its domain omega t <= {}", wt_max,
                small_time_domain));
        break;
    default:
        break;
    }

    curve.times.assign(times.begin(), times.end());
    curve.values.reserve(times.size());
    curve.underflow.reserve(times.size());
    for (double t : times) {
        Coherence c;
        switch (method) {
        case CurveMethod::large_n:
            c = offdiag_largeN(t, cfg.n_particles, n0, omega);
            break;
        case CurveMethod::small_t:
            c = offdiag_smallt(t, cfg.n_particles, n0, omega);
            break;
        case CurveMethod::free_particle:
            c = free_particle_offdiag(t, cfg, state);
            break;
        case CurveMethod::product_approx:
        case CurveMethod::product_exact: {
            const auto om = method == CurveMethod::product_exact ? OverlapMethod::exact_determinant
                                                                 : OverlapMethod::second_order;
            const auto p = offdiag_product(state, t, cfg, om);
            c.value = p.value;
            c.log_value = p.log_value;
            c.exponent = p.exponent;
            c.underflow = p.underflow;
            break;
        }
        }
        curve.values.push_back(c.value);
        curve.underflow.push_back(c.underflow);
        curve.underflow_flag = curve.underflow_flag || c.underflow;
    }
    return curve;
}

}  // namespace ringdeco
