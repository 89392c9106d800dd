#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "ringdeco/curves.hpp"

using namespace ringdeco;
using doctest::Approx;

namespace {

RingConfig ring(double n)
{
    RingConfig cfg;
    cfg.n_particles = n;
    return cfg;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = a + (b - a) * i / (n - 1);
    return out;
}

}  // namespace

TEST_CASE("large-N law")
{
    const double w = 1e14;
    CHECK(offdiag_largeN(0.0, 1e23, 1.3e23, w).value == 0.5);

    // Oscillates about the plateau at long times.
    double sum = 0;
    const auto ts = linspace(2000 / w, 2100 / w, 2001);
    for (double t : ts)
        sum += offdiag_largeN(t, 1e23, 1.3e23, w).value;
    CHECK(sum / ts.size() == Approx(0.5 * std::exp(-1e23 / 1.3e23)).epsilon(0.01));
    CHECK(sum / ts.size() == Approx(0.23).epsilon(0.02));

    // N = N0: envelope 1/2 e^-1 as J0 dies away.
    CHECK(offdiag_largeN(1e6 / w, 5.0, 5.0, w).value == Approx(0.5 * std::exp(-1.0)).epsilon(1e-3));
    CHECK(offdiag_largeN(3.0, 7.0, std::numeric_limits<double>::infinity(), 1.0).value == 0.5);

    const auto huge = offdiag_largeN(1.0, 1e30, 1.0, 1.0);
    CHECK(huge.underflow);
    CHECK(huge.value == 0.0);
    CHECK(huge.log_value < -1e29);
}

TEST_CASE("small-time law")
{
    CHECK(offdiag_smallt(0.0, 10, 3, 1).value == 0.5);
    CHECK_FALSE(offdiag_smallt(0.2, 10, 3, 1).in_domain);
    CHECK(offdiag_smallt(0.1, 10, 3, 1).in_domain);

    // Agreement with the Bessel law; the residual is the quartic Taylor term
    // 4 (N/N0) (omega t)^4, which stays below 1% for N/N0 <= 400 at omega t = 0.05.
    for (double ratio : {1e-3, 1.0, 10.0, 100.0, 400.0}) {
        for (double wt : {0.0, 0.01, 0.03, 0.05}) {
            const double s = offdiag_smallt(wt, ratio, 1.0, 1.0).value;
            const double l = offdiag_largeN(wt, ratio, 1.0, 1.0).value;
            CHECK(s == Approx(l).epsilon(0.01));
            CHECK(std::log(l / s) == Approx(4 * ratio * std::pow(wt, 4)).epsilon(0.02).scale(1e-12));
        }
    }

    // With N0 substituted, the exponent is -(9N/8) w^2 t^2 (dE/Mc^2)^2.
    RingConfig cfg = ring(1e22);
    const auto st = from_velocities(cfg, 1000, 200);
    const double eps = energy_gap_ratio(st.p1, st.p2, cfg.total_mass(), cfg.light_speed);
    const double n0 = derive_scalars(cfg, st).n0;
    const double t = 0.01 / cfg.coupling;
    const double expected = -9 * cfg.n_particles / 8 * std::pow(cfg.coupling * t * eps, 2);
    CHECK(offdiag_smallt(t, cfg.n_particles, n0, cfg.coupling).log_value - std::log(0.5) ==
          Approx(expected).epsilon(1e-10));
}

TEST_CASE("decoherence time")
{
    RingConfig person = ring(5e27);
    CHECK(decoherence_time(person, from_velocities(person, 10, 5)) == Approx(3.2e-13).epsilon(0.01));
    RingConfig earth = ring(2.5e50);
    CHECK(decoherence_time(earth, from_velocities(earth, 3e4, 2e4)) == Approx(2.2e-31).epsilon(0.03));
    CHECK(std::isinf(decoherence_time(person, MomentumSuperposition{4.0, 4.0})));

    // tau is where the small-time law has fallen by 1/e.
    const auto st = from_velocities(person, 10, 5);
    const double tau = decoherence_time(person, st);
    const double n0 = derive_scalars(person, st).n0;
    CHECK(offdiag_smallt(tau, person.n_particles, n0, person.coupling).log_value - std::log(0.5) ==
          Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("plateau")
{
    CHECK(plateau(1.0, 1e9) == Approx(0.5).epsilon(1e-8));
    CHECK(plateau(1e24, 1.3e23) == Approx(2.3e-4).epsilon(0.05));
    CHECK(plateau(3.0, 3.0) == Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));

    // n_over_n0 stays finite where N0 itself is astronomically large or small.
    RingConfig universe = ring(5e78);
    const auto su = from_velocities(universe, 2e6, 1e6);
    CHECK(n_over_n0(universe, su) == Approx(universe.n_particles / derive_scalars(universe, su).n0).epsilon(1e-12));
}

TEST_CASE("free particle")
{
    RingConfig cfg = ring(101);
    cfg.coupling = 1e3;
    cfg.particle_mass = 1e-20;
    const MomentumSuperposition st = from_velocities(cfg, 3e6, 1e6);
    CHECK(free_particle_offdiag(0.0, cfg, st).value == 0.5);

    for (std::int64_t k : {1, 17, 50, 100})
        CHECK(free_particle_coefficient_raw(k, cfg) == Approx(free_particle_coefficient(k, cfg)).epsilon(1e-12));

    const double eps = energy_gap_ratio(st.p1, st.p2, cfg.total_mass(), cfg.light_speed);
    for (double wt : {1e-3, 0.01, 0.05}) {
        const double t = wt / cfg.coupling;
        const double exponent = free_particle_offdiag(t, cfg, st).log_value - std::log(0.5);
        CHECK(exponent == Approx(-9 * cfg.n_particles / 8 * std::pow(cfg.coupling * t * eps, 2)).epsilon(0.01));
    }

    // Direct sum oracle.
    const double t = 7.0 / cfg.coupling;
    double direct = 0;
    for (int k = 1; k < 101; ++k) {
        const double s = std::sin(std::numbers::pi * k / 101);
        direct += std::log1p(9 * std::pow(cfg.coupling * s * eps * t, 2));
    }
    CHECK(free_particle_offdiag(t, cfg, st).log_value == Approx(std::log(0.5) - direct / 4).epsilon(1e-12));

    // No plateau: the free-particle value keeps falling.
    const double tau = decoherence_time(cfg, st);
    const auto late = free_particle_offdiag(1e8 * tau, cfg, st);
    CHECK(late.value < 1e-3);
    CHECK(free_particle_offdiag(1e9 * tau, cfg, st).log_value < late.log_value);
}

TEST_CASE("curve sampling")
{
    RingConfig cfg = ring(1e23);
    const auto st = from_velocities(cfg, 1000, 200);
    const std::vector<double> none;
    const auto empty = curve_sample(CurveMethod::large_n, none, cfg, st);
    CHECK(empty.times.empty());
    CHECK(empty.values.empty());

    const std::vector<double> backwards{2e-14, 1e-14};
    CHECK_THROWS_AS(curve_sample(CurveMethod::large_n, backwards, cfg, st), ConfigError);
    const std::vector<double> negative{-1e-14};
    CHECK_THROWS_AS(curve_sample(CurveMethod::large_n, negative, cfg, st), ConfigError);
    const std::vector<double> ts{0.0, 1e-14};
    CHECK_THROWS_AS(curve_sample(CurveMethod::product_exact, ts, cfg, st), ConfigError);

    CHECK(to_string(CurveMethod::product_exact) == "product-exact");
    CHECK(parse_curve_method("large-N") == CurveMethod::large_n);
    CHECK(parse_curve_method("small-t") == CurveMethod::small_t);
    CHECK_THROWS_AS(parse_curve_method("exact"), ConfigError);

    const auto warned = curve_sample(CurveMethod::small_t, linspace(0, 1e-14, 5), cfg, st);
    CHECK_FALSE(warned.warnings.empty());

    RingConfig small = ring(61);
    const auto ss = from_velocities(small, 1000, 200);
    CHECK_FALSE(curve_sample(CurveMethod::large_n, ts, small, ss).warnings.empty());
}

TEST_CASE("carbon-ring curves settle near the plateau")
{
    const auto times = linspace(0, 20 / 1e14, 2000);
    for (double n : {1e22, 1e23, 1e24}) {
        RingConfig cfg = ring(n);
        const auto st = from_velocities(cfg, 1000, 200);
        const auto curve = curve_sample(CurveMethod::large_n, times, cfg, st);
        REQUIRE(curve.values.size() == 2000);
        CHECK(curve.values.front() == 0.5);
        const double tail = std::accumulate(curve.values.begin() + 1000, curve.values.end(), 0.0) / 1000;
        const double p = plateau(n, derive_scalars(cfg, st).n0);
        // Over omega t in [10, 20] the residual J0 oscillation still biases the mean.
        CHECK(tail == Approx(p).epsilon(0.2).scale(1e-3));
    }
}

TEST_CASE("product curves against the large-N law")
{
    RingConfig cfg = ring(1001);
    cfg.coupling = 1;
    cfg.light_speed = 1;
    cfg.hbar = 1;
    cfg.particle_mass = 1;
    const double m = cfg.total_mass();
    const auto times = linspace(0, 10, 21);

    // N0 = 2000 (eps^2 = 32 / (9 N0)): the second-order product follows the Bessel law.
    const double eps = std::sqrt(32.0 / (9 * 2000));
    const MomentumSuperposition st{m * std::sqrt(2 * eps), 0.0};
    const auto large = curve_sample(CurveMethod::large_n, times, cfg, st);
    const auto approx = curve_sample(CurveMethod::product_approx, times, cfg, st);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(approx.values[i] == Approx(large.values[i]).epsilon(0.01));

    // The exact determinant carries O(delta) corrections, so it is compared where delta
    // is small, through the decay exponent.
    const double eps_small = 1e-3;
    const MomentumSuperposition weak{m * std::sqrt(2 * eps_small), 0.0};
    const auto large_w = curve_sample(CurveMethod::large_n, times, cfg, weak);
    const auto exact_w = curve_sample(CurveMethod::product_exact, times, cfg, weak);
    for (std::size_t i = 1; i < times.size(); ++i)
        CHECK(std::log(2 * exact_w.values[i]) == Approx(std::log(2 * large_w.values[i])).epsilon(0.01));
}
