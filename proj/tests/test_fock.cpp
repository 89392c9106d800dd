#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "ringdeco/fock.hpp"
#include "ringdeco/squeeze.hpp"

using namespace ringdeco;
using doctest::Approx;
using cd = std::complex<double>;

TEST_CASE("truncated hamiltonian spectrum")
{
    const auto free = build_mode_hamiltonian(0.0, 16);
    for (int n = 0; n < 16; ++n)
        CHECK(free.hamiltonian(n, n) == Approx(n + 0.5).epsilon(1e-15));
    CHECK((free.hamiltonian - Eigen::MatrixXd(free.hamiltonian.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    // H = (1 - delta) p^2/2 + x^2/2 has levels (n + 1/2) sqrt(1 - delta).
    for (double delta : {0.05, 0.3, 0.6}) {
        const auto mode = build_mode_hamiltonian(delta, 96);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mode.hamiltonian);
        for (int n = 0; n < 10; ++n)
            CHECK(es.eigenvalues()(n) == Approx((n + 0.5) * std::sqrt(1 - delta)).epsilon(1e-10));
    }

    CHECK((annihilation_matrix(5).cast<cd>() - oracle::lowering(5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cutoff convergence")
{
    for (double tau : {0.3, 2.0, 11.0}) {
        const cd a = vacuum_overlap_bruteforce(0.02, 0.005, tau, 32);
        const cd b = vacuum_overlap_bruteforce(0.02, 0.005, tau, 64);
        CHECK(std::abs(a - b) < 1e-10);
    }
    const auto conv = vacuum_overlap_converged(0.02, 0.005, 1.7, 16);
    CHECK(conv.accepted);
    CHECK(conv.cutoff_difference < convergence_threshold);
}

TEST_CASE("overlap against the exact determinant")
{
    CHECK(std::abs(vacuum_overlap_bruteforce(0.1, 0.1, 3.3, 32)) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(vacuum_overlap_bruteforce(0.1, 0.02, 0.0, 32) - 1.0) < 1e-14);
    for (double tau : {0.25, 1.0, 4.0, 9.5})
        CHECK(std::abs(vacuum_overlap_bruteforce(0.02, 0.005, tau, 32) - exact_overlap(0.02, 0.005, 1.0, tau)) < 1e-6);
}

TEST_CASE("norm is conserved")
{
    const VacuumPropagator prop(0.1, 48);
    double worst = 0;
    for (int i = 0; i <= 200; ++i)
        worst = std::max(worst, std::abs(prop.state(0.5 * i).norm() - 1.0));
    CHECK(worst < 1e-10);

    // Against a Pade propagation.
    for (double tau : {0.7, 5.0})
        CHECK((prop.state(tau) - oracle::propagate_vacuum(0.1, tau, 48)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("leakage is reported")
{
    CHECK_THROWS_AS(vacuum_overlap_bruteforce(0.9, 0.0, 1.0, 8), LeakageError);
    CHECK_NOTHROW(vacuum_overlap_bruteforce(0.02, 0.0, 1.0, 8));
    CHECK_THROWS_AS(VacuumPropagator(0.1, 4), ConfigError);
}

TEST_CASE("squeeze matrix")
{
    CHECK((squeeze_matrix(0.0, 12) - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-14);

    constexpr int dim = 64;
    constexpr int lower = 48;
    for (cd z : {cd{0.4, 0.0}, cd{0.3, 0.5}, cd{-0.7, 0.2}}) {
        const auto s = squeeze_matrix(z, dim);
        const auto inv = squeeze_matrix(-z, dim);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(lower, lower);
        CHECK(((s * inv).topLeftCorner(lower, lower) - id).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(((s.adjoint() * s).topLeftCorner(lower, lower) - id).cwiseAbs().maxCoeff() < 1e-8);
        const auto pade = oracle::squeeze_pade(z, dim);
        CHECK((s.topLeftCorner(dim / 2, dim / 2) - pade.topLeftCorner(dim / 2, dim / 2)).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK_THROWS_AS(squeeze_matrix(cd{2.5, 0}, 64), ConfigError);
    CHECK_THROWS_AS(squeeze_matrix(cd{1.5, 0}, 8), LeakageError);
}

TEST_CASE("ring-unit overlap")
{
    RingConfig cfg;
    cfg.n_particles = 5;
    cfg.particle_mass = 1;
    cfg.coupling = 1;
    cfg.light_speed = 1;
    cfg.hbar = 1;
    const double m = cfg.total_mass();
    const double p1 = m * std::sqrt(2 * 0.02 / 3), p2 = m * std::sqrt(2 * 0.005 / 3);
    const double wk = mode_frequency(2, 5, 1.0);
    CHECK(std::abs(vacuum_overlap_bruteforce(2, p1, p2, 1.3 / wk, 32, cfg) -
                   vacuum_overlap_bruteforce(0.02, 0.005, 1.3, 32)) < 1e-12);
    const auto mode = build_mode_hamiltonian(2, p1, 16, cfg);
    CHECK(mode.delta == Approx(0.02).epsilon(1e-12));
    CHECK(mode.energy_unit == Approx(wk).epsilon(1e-12));
}
