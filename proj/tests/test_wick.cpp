#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "ringdeco/fock.hpp"
#include "ringdeco/wick.hpp"

using namespace ringdeco;
using doctest::Approx;

namespace {

RingConfig unit_ring(double n)
{
    RingConfig cfg;
    cfg.n_particles = n;
    cfg.particle_mass = 1;
    cfg.coupling = 1;
    cfg.light_speed = 1;
    cfg.hbar = 1;
    return cfg;
}

MomentumLabel diag(std::int64_t k) { return {MomentumBasis::diagonal, k}; }
MomentumLabel four(std::int64_t k) { return {MomentumBasis::fourier, k}; }

// <p_a p_b> straight from the covariance and W, unit constants.
std::complex<double> fourier_contraction(const Eigen::MatrixXcd& w, int n, std::int64_t a, std::int64_t b)
{
    std::complex<double> s = 0;
    for (int j = 1; j < n; ++j)
        s += std::conj(w(j - 1, a - 1)) * std::conj(w(j - 1, b - 1)) * std::sin(std::numbers::pi * j / n);
    return s;
}

}  // namespace

TEST_CASE("vacuum moments")
{
    RingConfig cfg;
    cfg.n_particles = 7;
    const std::array<MomentumLabel, 3> odd{diag(1), diag(2), diag(1)};
    CHECK(wick_vacuum_moment(odd, cfg) == 0.0);
    for (std::int64_t k = 1; k < 7; ++k) {
        const std::array<MomentumLabel, 2> kk{diag(k), diag(k)};
        const double expected = cfg.particle_mass * cfg.hbar * mode_frequency(k, 7, cfg.coupling) / 2;
        CHECK(wick_vacuum_moment(kk, cfg) == Approx(expected).epsilon(1e-14));
    }
    RingConfig five = cfg;
    five.n_particles = 5;
    for (std::int64_t k = 1; k < 5; ++k) {
        const std::array<MomentumLabel, 2> kk{diag(k), diag(k)};
        const double expected = five.particle_mass * five.hbar * mode_frequency(k, 5, five.coupling) / 2;
        CHECK(multimode_vacuum_moment(4, kk, 4, five) == Approx(expected).epsilon(1e-12));
        const std::array<MomentumLabel, 3> odd3{diag(k), four(1), diag(k)};
        CHECK(std::abs(multimode_vacuum_moment(4, odd3, 4, five)) < 1e-14 * expected);
    }
    const std::array<MomentumLabel, 0> none{};
    CHECK(wick_vacuum_moment(none, cfg) == 1.0);
}

TEST_CASE("six-operator moments against the tensor-product oracle")
{
    const RingConfig cfg = unit_ring(5);
    const std::vector<std::array<MomentumLabel, 6>> products{
        {diag(1), diag(1), diag(2), diag(2), diag(3), diag(3)},
        {diag(1), diag(1), diag(1), diag(1), diag(1), diag(1)},
        {four(1), four(2), four(2), four(4), four(3), four(3)},
        {four(1), four(1), four(3), four(4), four(4), four(2)},
        {four(2), diag(2), four(3), diag(1), four(4), four(1)},
    };
    for (const auto& ops : products) {
        const double wick = wick_vacuum_moment(ops, cfg);
        const double tensor = multimode_vacuum_moment(4, ops, 8, cfg);
        CHECK(wick == Approx(tensor).epsilon(1e-10).scale(1e-8));
    }

    // SI units: the same agreement, relative.
    RingConfig si;
    si.n_particles = 5;
    const auto& ops = products[2];
    CHECK(wick_vacuum_moment(ops, si) == Approx(multimode_vacuum_moment(4, ops, 8, si)).epsilon(1e-10));
}

TEST_CASE("cubic-constraint moment against the tensor-product oracle")
{
    const RingConfig cfg = unit_ring(5);
    const auto triples = cubic_constraint_triples(5);
    // sum over constrained (k1, k2, k3) of <p_k1 p_k2 p_k3 p_{N-k1} p_{N-k2} p_{N-k3}>
    double wick = 0, tensor = 0;
    for (const auto& t : triples) {
        const std::array<MomentumLabel, 6> ops{four(t[0]),     four(t[1]),     four(t[2]),
                                               four(5 - t[0]), four(5 - t[1]), four(5 - t[2])};
        wick += wick_vacuum_moment(ops, cfg);
        tensor += multimode_vacuum_moment(4, ops, 8, cfg);
    }
    CHECK(wick == Approx(tensor).epsilon(1e-10).scale(1e-8));
}

TEST_CASE("constraint triples")
{
    for (std::int64_t n : {3, 5, 11, 21}) {
        const auto triples = cubic_constraint_triples(n);
        std::set<std::array<std::int64_t, 3>> seen(triples.begin(), triples.end());
        CHECK(seen.size() == triples.size());
        std::size_t brute = 0;
        for (std::int64_t a = 1; a < n; ++a)
            for (std::int64_t b = 1; b < n; ++b)
                for (std::int64_t c = 1; c < n; ++c)
                    brute += (a + b + c) % n == 0;
        CHECK(triples.size() == brute);
    }
}

TEST_CASE("resource guards")
{
    RingConfig big;
    big.n_particles = 203;
    const std::array<MomentumLabel, 2> kk{diag(1), diag(1)};
    CHECK_THROWS_AS(wick_vacuum_moment(kk, big), ConfigError);
    big.n_particles = 5;
    const std::array<MomentumLabel, 2> out_of_range{diag(5), diag(1)};
    CHECK_THROWS_AS(wick_vacuum_moment(out_of_range, big), ConfigError);
    CHECK_THROWS_AS(multimode_vacuum_moment(3, kk, 8, big), ConfigError);
    CHECK_THROWS_AS(multimode_vacuum_moment(4, kk, 17, big), ConfigError);
    const std::array<MomentumLabel, 6> six{diag(1), diag(1), diag(1), diag(1), diag(1), diag(1)};
    CHECK_THROWS_AS(multimode_vacuum_moment(4, six, 6, big), LeakageError);
}

TEST_CASE("opposite-momentum decay channels")
{
    RingConfig cfg;
    cfg.n_particles = 11;
    cfg.particle_mass = 1e-26;
    cfg.coupling = 1e12;
    const double p = cfg.total_mass() * 3e3;

    const auto same = opposite_momentum_rates(cfg, p, p);
    CHECK(same.tau_sq_inv == 0.0);
    CHECK(same.tau_prime_sq_inv == 0.0);

    const auto opposite = opposite_momentum_rates(cfg, p, -p);
    CHECK(opposite.tau_sq_inv == 0.0);
    CHECK(opposite.tau_prime_sq_inv > 0.0);
    CHECK(opposite.ratio == 0.0);  // tau is infinite

    // Quadratic channel: independent Gaussian P_k give Var(sum P_k^2) = 2 sum s_k^2,
    // so the rate is (9N/8) eps^2 omega^2.
    const auto st = MomentumSuperposition{p, 0.4 * p};
    const auto r = opposite_momentum_rates(cfg, st.p1, st.p2);
    const double eps = energy_gap_ratio(st.p1, st.p2, cfg.total_mass(), cfg.light_speed);
    CHECK(r.tau_sq_inv == Approx(9 * cfg.n_particles / 8 * std::pow(eps * cfg.coupling, 2)).epsilon(1e-10));
}

TEST_CASE("cubic channel against an unpruned pairing sum")
{
    for (int n : {5, 7, 9}) {
        RingConfig cfg = unit_ring(n);
        cfg.light_speed = 50;
        const double p1 = 2.0, p2 = -0.5;
        const auto r = opposite_momentum_rates(cfg, p1, p2);

        // sum over all constrained T, T' of <p_T p_T'>, every pairing, no pruning.
        const auto w = bogoliubov_matrix(n);
        const auto triples = cubic_constraint_triples(n);
        double second = 0;
        for (const auto& t : triples) {
            for (const auto& u : triples) {
                const std::array<std::int64_t, 6> idx{t[0], t[1], t[2], u[0], u[1], u[2]};
                Eigen::MatrixXcd c(6, 6);
                for (int i = 0; i < 6; ++i)
                    for (int j = 0; j < 6; ++j)
                        c(i, j) = fourier_contraction(w, n, idx[i], idx[j]);
                std::vector<int> free{0, 1, 2, 3, 4, 5};
                second += oracle::pairing_sum(c, free).real();
            }
        }
        const double m = cfg.total_mass();
        const double b = (p1 - p2) / (m * cfg.light_speed) / cfg.light_speed / (2 * std::sqrt(double(n)));
        CHECK(r.tau_prime_sq_inv == Approx(0.5 * b * b * second).epsilon(1e-9));
    }
}

TEST_CASE("ratio of the two channels does not grow with N")
{
    // tau'/tau from the Wick moments tends to a constant; see the triple-sine oracle.
    std::vector<double> ratios;
    for (int n : {5, 11, 21, 41}) {
        RingConfig cfg = unit_ring(n);
        cfg.light_speed = 1e3;
        const double m = cfg.total_mass();
        const double v1 = 3.0, v2 = 1.0;
        const auto r = opposite_momentum_rates(cfg, m * v1, m * v2);
        // (tau'/tau)^2 = 3 N^2 m (V1 + V2)^2 / (8 hbar omega T_N)
        const double expected = 3.0 * n * n * std::pow(v1 + v2, 2) / (8 * oracle::cubic_sine_sum(n));
        CHECK(r.ratio * r.ratio == Approx(expected).epsilon(1e-9));
        ratios.push_back(r.ratio);
        CHECK(r.printed_ratio == Approx(n * std::pow(v1 + v2, 2)).epsilon(1e-12));
    }
    CHECK(ratios.back() / ratios.front() < 1.5);
    CHECK(ratios.back() == Approx(std::sqrt(std::numbers::pi / 2) * 4.0).epsilon(0.05));
}
