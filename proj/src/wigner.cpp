#include "ringdeco/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace ringdeco {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double decay_weight(double t, const CatParameters& params, const RingConfig& cfg)
{
    return params.scaled_gamma() * one_minus_bessel_j0(4.0 * cfg.coupling * t);
}

// Time-independent parts of the component evaluation.
struct FieldTerms {
    double hbar;
    double sigma;
    double prefactor;  // 1 / (|Xi|^2 pi hbar)
    double decay;      // gamma/N^4 (1 - J0(4 omega t))
    cd alpha;
    cd beta;
    cd d;               // alpha - conj(beta)
    cd g_shift;         // sigma (alpha + conj(beta))
    cd interference_c;  // -d^2/2 - Im(alpha)^2 - Im(beta)^2

    FieldTerms(double t, const CatParameters& params, const RingConfig& cfg)
        : hbar(cfg.hbar),
          sigma(params.sigma),
          prefactor(1.0 / (normalization_sq(params.alpha, params.beta) * std::numbers::pi * cfg.hbar)),
          decay(decay_weight(t, params, cfg)),
          alpha(params.alpha),
          beta(params.beta),
          d(params.alpha - std::conj(params.beta)),
          g_shift(params.sigma * (params.alpha + std::conj(params.beta))),
          interference_c(-0.5 * d * d - params.alpha.imag() * params.alpha.imag() -
                         params.beta.imag() * params.beta.imag())
    {
    }

    double direct(double p, double q, cd a) const
    {
        const double g = q - 2.0 * sigma * a.real();
        const double s2 = sigma * sigma;
        const double dp = (sigma * p - hbar * a.imag()) / hbar;
        const double dec = 4.0 * decay * p * p * s2 / (hbar * hbar);
        const double e = -g * g / (2.0 * s2) - 2.0 * dp * dp - dec * (1.0 - g * g / s2);
        return prefactor * std::exp(e);
    }

    double interference(double p, double q) const
    {
        const cd g = q - g_shift;
        const double s2 = sigma * sigma;
        const cd shifted = p + I * hbar * d / (2.0 * sigma);
        const double dec = 4.0 * decay * p * p * s2 / (hbar * hbar);
        const cd e = -2.0 * s2 / (hbar * hbar) * shifted * shifted + interference_c - g * g / (2.0 * s2) -
                     dec * (1.0 - g * g / s2);
        return 2.0 * (prefactor * std::exp(e)).real();
    }
};

}  // namespace

CatParameters CatParameters::from_physics(const RingConfig& cfg, const CatState& state)
{
    CatParameters p;
    p.alpha = state.alpha;
    p.beta = state.beta;
    p.sigma = state.sigma;
    p.n = cfg.n_particles;
    p.gamma = default_gamma(cfg, state.sigma);
    return p;
}

void CatParameters::validate() const
{
    if (!(sigma > 0))
        throw ValidityError(fmt::format("cat-state sigma must be positive, got {}", sigma));
    if (!(gamma >= 0))
        throw ConfigError(fmt::format("gamma must be non-negative, got {}", gamma));
    if (!(n >= 1))
        throw ConfigError(fmt::format("particle number must be positive, got {}", n));
}

double default_gamma(const RingConfig& cfg, double sigma)
{
    const double x = cfg.hbar / (sigma * cfg.particle_mass * cfg.light_speed);
    return 9.0 * cfg.n_particles / 128.0 * x * x * x * x;
}

cd coherent_momentum_amplitude(double p, cd alpha, double sigma, double hbar)
{
    const double norm = std::pow(2.0 * sigma * sigma / (std::numbers::pi * hbar * hbar), 0.25);
    const double u = sigma / hbar;
    const double shift = p - alpha.imag() / u;
    return norm * std::exp(-u * u * shift * shift) * std::polar(1.0, -2.0 * u * alpha.real() * p);
}

cd coherent_overlap(cd alpha, cd beta)
{
    const double dist = std::norm(alpha - beta);
    const double phase = (alpha.real() - beta.real()) * (alpha.imag() + beta.imag());
    return std::polar(std::exp(-0.5 * dist), phase);
}

double normalization_sq(cd alpha, cd beta)
{
    return 2.0 + 2.0 * coherent_overlap(alpha, beta).real();
}

WignerComponents wigner_components(double p, double q, double t, const CatParameters& params,
                                   const RingConfig& cfg)
{
    const FieldTerms terms(t, params, cfg);
    return {terms.direct(p, q, params.alpha), terms.direct(p, q, params.beta), terms.interference(p, q)};
}

GridSpec default_grid(const CatParameters& params, const RingConfig& cfg, int resolution, double widths)
{
    if (resolution < 2)
        throw ConfigError(fmt::format("grid resolution must be >= 2, got {}", resolution));
    const double hbar = cfg.hbar;
    const double s = params.sigma;
    const double p1 = hbar * params.alpha.imag() / s;
    const double p2 = hbar * params.beta.imag() / s;
    const double q1 = 2.0 * s * params.alpha.real();
    const double q2 = 2.0 * s * params.beta.real();
    const double wp = hbar / (2.0 * s);
    const double wq = s;
    GridSpec g;
    g.np = g.nq = resolution;
    g.p_min = std::min(p1, p2) - widths * wp;
    g.p_max = std::max(p1, p2) + widths * wp;
    g.q_min = std::min(q1, q2) - widths * wq;
    g.q_max = std::max(q1, q2) + widths * wq;
    return g;
}

WignerField evaluate_field(const GridSpec& grid, double t, const CatParameters& params, const RingConfig& cfg)
{
    params.validate();
    if (grid.np < 2 || grid.nq < 2 || !(grid.p_max > grid.p_min) || !(grid.q_max > grid.q_min))
        throw ConfigError("degenerate Wigner grid");
    const FieldTerms terms(t, params, cfg);
    WignerField f;
    f.time = t;
    f.p_grid.resize(static_cast<std::size_t>(grid.np));
    f.q_grid.resize(static_cast<std::size_t>(grid.nq));
    for (int i = 0; i < grid.np; ++i)
        f.p_grid[i] = grid.p_min + (grid.p_max - grid.p_min) * i / (grid.np - 1);
    for (int j = 0; j < grid.nq; ++j)
        f.q_grid[j] = grid.q_min + (grid.q_max - grid.q_min) * j / (grid.nq - 1);
    const std::size_t total = f.p_grid.size() * f.q_grid.size();
    f.w_alpha.resize(total);
    f.w_beta.resize(total);
    f.w_interference.resize(total);
    f.w_total.resize(total);
    for (std::size_t i = 0; i < f.p_grid.size(); ++i) {
        for (std::size_t j = 0; j < f.q_grid.size(); ++j) {
            const double p = f.p_grid[i];
            const double q = f.q_grid[j];
            const std::size_t k = f.index(i, j);
            f.w_alpha[k] = terms.direct(p, q, params.alpha);
            f.w_beta[k] = terms.direct(p, q, params.beta);
            f.w_interference[k] = terms.interference(p, q);
            f.w_total[k] = f.w_alpha[k] + f.w_beta[k] + f.w_interference[k];
        }
    }
    return f;
}

WignerField wigner_field(double t, const CatParameters& params, const RingConfig& cfg, int resolution)
{
    // Away from t = 0 the decay term eventually beats the Gaussian and the tails grow,
    // so widening stops once the boundary mass turns upwards.
    double widths = 6.0;
    WignerField best = evaluate_field(default_grid(params, cfg, resolution, widths), t, params, cfg);
    best.boundary = boundary_mass(best);
    for (int attempt = 1; attempt < 8 && best.boundary > boundary_mass_limit; ++attempt) {
        widths += 2.0;
        auto field = evaluate_field(default_grid(params, cfg, resolution, widths), t, params, cfg);
        field.boundary = boundary_mass(field);
        if (!(field.boundary < best.boundary)) {
            best.tails_grow = true;
            return best;
        }
        best = std::move(field);
    }
    if (best.boundary > boundary_mass_limit)
        throw NumericError(fmt::format("Wigner field boundary mass {:.3e} above {} after widening to {} widths",
                                       best.boundary, boundary_mass_limit, widths));
    return best;
}

double field_integral(const WignerField& field, const std::vector<double>& values)
{
    const std::size_t np = field.p_grid.size();
    const std::size_t nq = field.q_grid.size();
    const double dp = (field.p_grid.back() - field.p_grid.front()) / static_cast<double>(np - 1);
    const double dq = (field.q_grid.back() - field.q_grid.front()) / static_cast<double>(nq - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double wi = (i == 0 || i == np - 1) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < nq; ++j) {
            const double wj = (j == 0 || j == nq - 1) ? 0.5 : 1.0;
            sum += wi * wj * values[field.index(i, j)];
        }
    }
    return sum * dp * dq;
}

double boundary_mass(const WignerField& field)
{
    const std::size_t np = field.p_grid.size();
    const std::size_t nq = field.q_grid.size();
    const double dp = (field.p_grid.back() - field.p_grid.front()) / static_cast<double>(np - 1);
    const double dq = (field.q_grid.back() - field.q_grid.front()) / static_cast<double>(nq - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < nq; ++j) {
            if (i == 0 || j == 0 || i == np - 1 || j == nq - 1)
                sum += std::abs(field.w_total[field.index(i, j)]);
        }
    }
    return sum * dp * dq;
}

GridPeak grid_maximum(const WignerField& field, const std::vector<double>& values)
{
    const auto it = std::max_element(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(it - values.begin());
    GridPeak peak;
    peak.ip = k / field.q_grid.size();
    peak.iq = k % field.q_grid.size();
    peak.p = field.p_grid[peak.ip];
    peak.q = field.q_grid[peak.iq];
    peak.value = *it;
    return peak;
}

StabilityReport peak_stability(double t, const CatParameters& params, const RingConfig& cfg, double strictness)
{
    const double g = params.gamma * one_minus_bessel_j0(4.0 * cfg.coupling * t);
    const double n4 = params.n * params.n * params.n * params.n;
    StabilityReport report;
    if (!(2.0 * g * strictness < n4))
        report.violations.push_back(fmt::format(
            "2 gamma (1 - J0(4 omega t)) = {:.6g} is not << N^4 = {:.6g} (factor {})", 2.0 * g, n4, strictness));
    const double ia = params.alpha.imag();
    const double ib = params.beta.imag();
    if (!(8.0 * g * ia * ia < n4))
        report.violations.push_back(
            fmt::format("8 gamma (1 - J0(4 omega t)) Im(alpha)^2 = {:.6g} >= N^4 = {:.6g}", 8.0 * g * ia * ia, n4));
    if (!(8.0 * g * ib * ib < n4))
        report.violations.push_back(
            fmt::format("8 gamma (1 - J0(4 omega t)) Im(beta)^2 = {:.6g} >= N^4 = {:.6g}", 8.0 * g * ib * ib, n4));
    report.ok = report.violations.empty();
    return report;
}

PeakValues wigner_peaks(double t, const CatParameters& params, const RingConfig& cfg)
{
    params.validate();
    const FieldTerms terms(t, params, cfg);
    const double ia = params.alpha.imag();
    const double ib = params.beta.imag();
    PeakValues out;
    out.alpha = terms.prefactor * std::exp(-4.0 * terms.decay * ia * ia);
    out.beta = terms.prefactor * std::exp(-4.0 * terms.decay * ib * ib);
    const cd sum = params.alpha + params.beta;
    out.interference = terms.interference(cfg.hbar * sum.imag() / (2.0 * params.sigma), params.sigma * sum.real());
    out.stability = peak_stability(t, params, cfg);
    return out;
}

double fringe_visibility(double t, const CatParameters& params, const RingConfig& cfg)
{
    const auto peaks = wigner_peaks(t, params, cfg);
    return 0.5 * peaks.interference / std::sqrt(peaks.alpha * peaks.beta);
}

double visibility_ratio(double t, const CatParameters& params, const RingConfig& cfg)
{
    return fringe_visibility(t, params, cfg) / fringe_visibility(0.0, params, cfg);
}

VisibilityLimits visibility_limits(const CatParameters& params, const RingConfig& cfg)
{
    const double ia = params.alpha.imag();
    const double ib = params.beta.imag();
    const double diff = ia * ia - ib * ib;
    VisibilityLimits out;
    out.plateau_exponent = params.scaled_gamma() * diff * diff;
    out.small_t_rate = 4.0 * cfg.coupling * cfg.coupling * out.plateau_exponent;

    const double x = cfg.hbar / (params.sigma * cfg.total_mass() * cfg.light_speed);
    out.energy_gap_ratio = 0.5 * x * x * diff;
    const double e2 = out.energy_gap_ratio * out.energy_gap_ratio;
    out.energy_form_rate = 9.0 * cfg.n_particles / 8.0 * cfg.coupling * cfg.coupling * e2;
    out.energy_form_plateau = 9.0 * cfg.n_particles / 32.0 * e2;
    return out;
}

}  // namespace ringdeco
