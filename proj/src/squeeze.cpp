#include "ringdeco/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace ringdeco {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// Both branches carry the same relative-mode frequency omega_k; only the kinetic
// prefactor differs.
SqueezePhaseSet make_phases(double delta1, double delta2, double omega_k, double t)
{
    const auto e1 = frequency_shift_to_squeeze(delta1);
    const auto e2 = frequency_shift_to_squeeze(delta2);
    SqueezePhaseSet s;
    s.r1 = e1.squeeze_magnitude;
    s.r2 = e2.squeeze_magnitude;
    s.omega_k_p1 = omega_k * e1.frequency_ratio;
    s.omega_k_p2 = omega_k * e2.frequency_ratio;
    s.time = t;
    return s;
}

double mode_omega(std::int64_t k, const RingConfig& cfg)
{
    const std::int64_t n = cfg.enumerable_particles();
    if (k < 1 || k >= n)
        throw ConfigError(fmt::format("mode index {} outside 1..{}", k, n - 1));
    return mode_frequency(k, n, cfg.coupling);
}

std::pair<double, double> branch_deltas(const MomentumSuperposition& state, const RingConfig& cfg)
{
    const double m = cfg.total_mass();
    return {expansion_parameter(state.p1, m, cfg.light_speed),
            expansion_parameter(state.p2, m, cfg.light_speed)};
}

cd zero_point_phase(const SqueezePhaseSet& s)
{
    return std::polar(1.0, 0.5 * (s.omega_k_p1 - s.omega_k_p2) * s.time);
}

// Continues sqrt(det A) in time from t = 0, halving steps when the phase of det A jumps.
class BranchTracker {
public:
    BranchTracker(double delta1, double delta2, double omega_k)
        : delta1_(delta1), delta2_(delta2), omega_k_(omega_k)
    {
        const auto s0 = make_phases(delta1, delta2, omega_k, 0.0);
        const auto g0 = assemble_gaussian_matrix(s0);
        det_ = lu_determinant(g0.a).value;
        // At t = 0 the overlap is 1, so det A(0) = prefactor^2 > 0 and the root is positive.
        sqrt_det_ = g0.prefactor;
        const double wmax = std::max(s0.omega_k_p1, s0.omega_k_p2);
        max_step_ = wmax > 0 ? 0.25 / (2.0 * wmax) : std::numeric_limits<double>::infinity();
    }

    cd advance_to(double t)
    {
        while (time_ != t) {
            double step = std::clamp(t - time_, -max_step_, max_step_);
            for (int halvings = 0;; ++halvings) {
                if (halvings > 60)
                    throw NumericError("determinant branch tracking failed to converge");
                const double next_time = (std::abs(t - time_) <= std::abs(step)) ? t : time_ + step;
                const auto s = make_phases(delta1_, delta2_, omega_k_, next_time);
                const auto g = assemble_gaussian_matrix(s);
                const cd det = lu_determinant(g.a).value;
                if (!(std::abs(det) > 1e-12 * g.prefactor * g.prefactor))
                    throw NumericError(fmt::format("det A nearly singular at t = {}", next_time));
                const cd ratio = det / det_;
                if (std::abs(std::arg(ratio)) > std::numbers::pi / 2) {
                    step *= 0.5;
                    continue;
                }
                sqrt_det_ *= std::sqrt(ratio);
                det_ = det;
                time_ = next_time;
                prefactor_ = g.prefactor;
                phases_ = s;
                break;
            }
        }
        if (time_ == 0.0)
            return 1.0;
        return prefactor_ / sqrt_det_ * zero_point_phase(phases_);
    }

private:
    double delta1_;
    double delta2_;
    double omega_k_;
    double time_ = 0;
    double max_step_ = 0;
    double prefactor_ = 8;
    cd det_;
    cd sqrt_det_;
    SqueezePhaseSet phases_;
};

}  // namespace

std::string_view to_string(OverlapMethod method)
{
    switch (method) {
    case OverlapMethod::exact_determinant:
        return "exact-determinant";
    case OverlapMethod::second_order:
        return "second-order";
    case OverlapMethod::fock_oracle:
        return "fock-oracle";
    }
    return "unknown";
}

EffectiveOscillator frequency_shift_to_squeeze(double delta)
{
    if (!(delta >= 0))
        throw ConfigError(fmt::format("frequency shift parameter must be >= 0, got {}", delta));
    if (!(delta < 1))
        throw ValidityError(fmt::format("frequency shift parameter {} >= 1: no bound oscillator", delta));
    EffectiveOscillator out;
    out.mass_ratio = 1.0 / (1.0 - delta);
    out.frequency_ratio = std::sqrt(1.0 - delta);
    out.squeeze_magnitude = -0.25 * std::log1p(-delta);
    out.squeeze_phase = std::numbers::pi;
    return out;
}

Su11Factors su11_disentangle(cd z)
{
    const double r = std::abs(z);
    const double phi = std::arg(z);
    const double th = std::tanh(r);
    Su11Factors f;
    f.plus = -std::polar(th, phi);
    f.log_coef = -2.0 * std::log(std::cosh(r));
    f.minus = std::polar(th, -phi);
    return f;
}

cd SqueezePhaseSet::g1() const
{
    return std::polar(std::tanh(r1), 2.0 * omega_k_p1 * time);
}

cd SqueezePhaseSet::g2() const
{
    return std::polar(std::tanh(r2), -2.0 * omega_k_p2 * time);
}

double reduce_phase(double phase)
{
    double r = std::remainder(phase, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r += 2.0 * std::numbers::pi;
    return r;
}

SqueezePhaseSet squeeze_phases(double delta1, double delta2, double omega_k, double t)
{
    return make_phases(delta1, delta2, omega_k, t);
}

SqueezePhaseSet squeeze_phases(std::int64_t k, const MomentumSuperposition& state, double t,
                               const RingConfig& cfg)
{
    const auto [d1, d2] = branch_deltas(state, cfg);
    return make_phases(d1, d2, mode_omega(k, cfg), t);
}

GaussianQuadraticForm assemble_gaussian_matrix(const SqueezePhaseSet& s)
{
    const double t1 = std::tanh(s.r1);
    const double t2 = std::tanh(s.r2);
    const double c1 = 1.0 / std::cosh(s.r1);
    const double c2 = 1.0 / std::cosh(s.r2);
    const cd g1 = s.g1();
    const cd g2 = s.g2();

    Eigen::Matrix2cd theta1;
    theta1 << 2.0 - g1 - t1, I * (t1 - g1), I * (t1 - g1), 2.0 + g1 + t1;
    Eigen::Matrix2cd theta2;
    theta2 << 2.0 - g2 - t2, -I * (t2 - g2), -I * (t2 - g2), 2.0 + g2 + t2;
    Eigen::Matrix2cd lambda;
    lambda << 2.0 + t1 + t2, I * (t1 - t2), I * (t1 - t2), 2.0 - t1 - t2;
    auto omega = [](double c) {
        Eigen::Matrix2cd m;
        m << -c, -I * c, I * c, -c;
        return m;
    };
    const Eigen::Matrix2cd om1 = omega(c1);
    const Eigen::Matrix2cd om2 = omega(c2);

    GaussianQuadraticForm out;
    out.a.setZero();
    out.a.block<2, 2>(0, 0) = theta1;
    out.a.block<2, 2>(0, 2) = om1;
    out.a.block<2, 2>(2, 0) = om1.transpose();
    out.a.block<2, 2>(2, 2) = lambda;
    out.a.block<2, 2>(2, 4) = om2;
    out.a.block<2, 2>(4, 2) = om2.transpose();
    out.a.block<2, 2>(4, 4) = theta2;
    out.prefactor = 8.0 * c1 * c2;
    return out;
}

GaussianQuadraticForm assemble_gaussian_matrix(std::int64_t k, const MomentumSuperposition& state,
                                               double t, const RingConfig& cfg)
{
    return assemble_gaussian_matrix(squeeze_phases(k, state, t, cfg));
}

PivotedDeterminant lu_determinant(const Matrix6cd& a)
{
    const Eigen::PartialPivLU<Matrix6cd> lu(a);
    const auto& packed = lu.matrixLU();
    PivotedDeterminant out;
    out.value = lu.determinant();
    out.min_pivot = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        const double p = std::abs(packed(i, i));
        out.min_pivot = std::min(out.min_pivot, p);
        out.max_pivot = std::max(out.max_pivot, p);
    }
    return out;
}

cd exact_overlap(double delta1, double delta2, double omega_k, double t)
{
    BranchTracker tracker(delta1, delta2, omega_k);
    return tracker.advance_to(t);
}

double exact_overlap_modulus(double delta1, double delta2, double omega_k, double t)
{
    const auto g = assemble_gaussian_matrix(make_phases(delta1, delta2, omega_k, t));
    const auto det = lu_determinant(g.a);
    if (!(det.min_pivot > 1e-14 * det.max_pivot))
        throw NumericError(fmt::format("det A nearly singular at t = {}", t));
    return g.prefactor / std::sqrt(std::abs(det.value));
}

std::vector<cd> exact_overlap_trajectory(double delta1, double delta2, double omega_k,
                                         std::span<const double> times)
{
    if (!std::is_sorted(times.begin(), times.end()))
        throw ConfigError("overlap trajectory needs an ascending time grid");
    std::vector<cd> out;
    out.reserve(times.size());
    BranchTracker tracker(delta1, delta2, omega_k);
    for (double t : times)
        out.push_back(tracker.advance_to(t));
    return out;
}

ModeOverlap mode_overlap_exact(std::int64_t k, const MomentumSuperposition& state, double t,
                               const RingConfig& cfg)
{
    const auto [d1, d2] = branch_deltas(state, cfg);
    return {exact_overlap(d1, d2, mode_omega(k, cfg), t), OverlapMethod::exact_determinant, k};
}

double second_order_overlap(double energy_ratio, double omega_k, double t)
{
    const double x = 9.0 / 32.0 * energy_ratio * energy_ratio;
    const double value = 1.0 - x * (1.0 - std::cos(2.0 * omega_k * t));
    if (!(value > 0))
        throw ValidityError(fmt::format(
            "second-order mode overlap {} <= 0: energy gap ratio {} too large for the expansion",
            value, energy_ratio));
    return value;
}

ModeOverlap mode_overlap_approx(std::int64_t k, const MomentumSuperposition& state, double t,
                                const RingConfig& cfg)
{
    const double eps = energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed);
    return {second_order_overlap(eps, mode_omega(k, cfg), t), OverlapMethod::second_order, k};
}

ProductResult offdiag_product(const MomentumSuperposition& state, double t, const RingConfig& cfg,
                              OverlapMethod method)
{
    const std::int64_t n = cfg.enumerable_particles();
    validate_state(cfg, state);
    const auto [d1, d2] = branch_deltas(state, cfg);
    const double eps = energy_gap_ratio(state.p1, state.p2, cfg.total_mass(), cfg.light_speed);
    const double x = 9.0 / 32.0 * eps * eps;

    // omega_k = omega_{N-k}: sum the lower half and double.
    double log_sum = 0.0;
    for (std::int64_t k = 1; k <= (n - 1) / 2; ++k) {
        const double wk = mode_frequency(k, n, cfg.coupling);
        double term = 0.0;
        switch (method) {
        case OverlapMethod::exact_determinant:
            term = std::log(exact_overlap_modulus(d1, d2, wk, t));
            break;
        case OverlapMethod::second_order: {
            const double one_minus_cos = 2.0 * std::pow(std::sin(wk * t), 2);
            const double shift = x * one_minus_cos;
            if (!(shift < 1))
                throw ValidityError(fmt::format(
                    "second-order mode overlap <= 0 for k = {}: energy gap ratio {} too large", k, eps));
            term = std::log1p(-shift);
            break;
        }
        case OverlapMethod::fock_oracle:
            throw ConfigError("the Fock oracle is not available for the mode product");
        }
        log_sum += 2.0 * term;
    }

    ProductResult out;
    out.log_value = std::log(0.5) + log_sum;
    out.exponent = log_sum;
    if (log_sum < underflow_log_threshold) {
        out.value = 0.0;
        out.underflow = true;
    } else {
        out.value = 0.5 * std::exp(log_sum);
    }
    return out;
}

}  // namespace ringdeco
