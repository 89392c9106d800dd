#include "ringdeco/wick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace ringdeco {

namespace {

using cd = std::complex<double>;

// Sum over perfect matchings of the index list, pairing the first free index each time.
cd hafnian(const Eigen::MatrixXcd& c, std::vector<int>& free)
{
    if (free.empty())
        return 1.0;
    const int first = free.front();
    cd total = 0.0;
    for (std::size_t j = 1; j < free.size(); ++j) {
        const cd w = c(first, free[j]);
        if (w == 0.0)
            continue;
        std::vector<int> rest;
        rest.reserve(free.size() - 2);
        for (std::size_t i = 1; i < free.size(); ++i)
            if (i != j)
                rest.push_back(free[i]);
        total += w * hafnian(c, rest);
    }
    return total;
}

}  // namespace

VacuumMomentEvaluator::VacuumMomentEvaluator(const RingConfig& cfg)
{
    n_ = cfg.enumerable_particles();
    if (n_ > max_wick_particles)
        throw ConfigError(fmt::format("Wick moments limited to N <= {}, got {}", max_wick_particles, n_));
    const auto dim = static_cast<std::size_t>(n_ - 1);
    variance_.resize(dim);
    diagonal_.resize(dim);
    fourier_.resize(dim);
    for (std::int64_t j = 1; j < n_; ++j) {
        variance_[j - 1] = 0.5 * cfg.particle_mass * cfg.hbar * mode_frequency(j, n_, cfg.coupling);
        diagonal_[j - 1] = {{j, 1.0}};
    }
    const Eigen::MatrixXcd w = bogoliubov_matrix(static_cast<int>(n_));
    for (std::int64_t a = 1; a < n_; ++a) {
        for (std::int64_t j = 1; j < n_; ++j) {
            const cd coeff = std::conj(w(j - 1, a - 1));
            if (coeff != 0.0)
                fourier_[a - 1].emplace_back(j, coeff);
        }
    }
}

const VacuumMomentEvaluator::Sparse& VacuumMomentEvaluator::expand(const MomentumLabel& label) const
{
    if (label.k < 1 || label.k >= n_)
        throw ConfigError(fmt::format("momentum label k = {} outside 1..{}", label.k, n_ - 1));
    const auto i = static_cast<std::size_t>(label.k - 1);
    return label.basis == MomentumBasis::diagonal ? diagonal_[i] : fourier_[i];
}

cd VacuumMomentEvaluator::contraction(const MomentumLabel& a, const MomentumLabel& b) const
{
    cd sum = 0.0;
    for (const auto& [ja, ca] : expand(a))
        for (const auto& [jb, cb] : expand(b))
            if (ja == jb)
                sum += ca * cb * variance_[static_cast<std::size_t>(ja - 1)];
    return sum;
}

double VacuumMomentEvaluator::moment(std::span<const MomentumLabel> ops) const
{
    if (ops.size() > max_wick_operators)
        throw ConfigError(fmt::format("at most {} operators per moment, got {}", max_wick_operators, ops.size()));
    for (const auto& op : ops)
        expand(op);
    if (ops.size() % 2 != 0)
        return 0.0;
    const int m = static_cast<int>(ops.size());
    Eigen::MatrixXcd c(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            c(i, j) = c(j, i) = contraction(ops[i], ops[j]);
    std::vector<int> free(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        free[static_cast<std::size_t>(i)] = i;
    // Products of Hermitian commuting operators built from conjugate Fourier pairs are real
    // whenever they survive momentum conservation; the imaginary part is rounding.
    return hafnian(c, free).real();
}

double wick_vacuum_moment(std::span<const MomentumLabel> ops, const RingConfig& cfg)
{
    return VacuumMomentEvaluator(cfg).moment(ops);
}

std::vector<std::array<std::int64_t, 3>> cubic_constraint_triples(std::int64_t n)
{
    std::vector<std::array<std::int64_t, 3>> out;
    for (std::int64_t k1 = 1; k1 < n; ++k1)
        for (std::int64_t k2 = 1; k2 < n; ++k2) {
            const std::int64_t k3 = (2 * n - k1 - k2) % n;
            if (k3 != 0)
                out.push_back({k1, k2, k3});
        }
    return out;
}

OppositeMomentumRates opposite_momentum_rates(const RingConfig& cfg, double p1, double p2)
{
    cfg.validate();
    validate_state(cfg, MomentumSuperposition{p1, p2});
    const double m_total = cfg.total_mass();
    const double c = cfg.light_speed;
    const double omega = cfg.coupling;

    // Momenta in units of sqrt(m hbar omega): the vacuum covariance becomes sin(pi k/N).
    RingConfig unit = cfg;
    unit.particle_mass = 1.0;
    unit.hbar = 1.0;
    unit.coupling = 1.0;
    const VacuumMomentEvaluator ev(unit);
    const std::int64_t n = ev.n_particles();

    // Quadratic channel: A / (hbar omega) = -(3/2) eps sum_k P_k^2.
    const double eps = energy_gap_ratio(p1, p2, m_total, c);
    double var_quadratic = 0.0;
    for (std::int64_t k = 1; k < n; ++k) {
        const MomentumLabel pk{MomentumBasis::diagonal, k};
        const std::array<MomentumLabel, 2> kk{pk, pk};
        const double mk = ev.moment(kk);
        for (std::int64_t l = 1; l < n; ++l) {
            const MomentumLabel pl{MomentumBasis::diagonal, l};
            const std::array<MomentumLabel, 4> kkll{pk, pk, pl, pl};
            const std::array<MomentumLabel, 2> ll{pl, pl};
            var_quadratic += ev.moment(kkll) - mk * ev.moment(ll);
        }
    }
    var_quadratic *= 2.25 * eps * eps;

    // Cubic channel: B / (hbar omega) = b sum_{k1+k2+k3 = qN} p_k1 p_k2 p_k3 with
    // b = (P1 - P2) sqrt(hbar omega / m) / (2 M c^2 sqrt N); its vacuum mean is zero.
    const double b = (p1 - p2) / (m_total * c) * (std::sqrt(cfg.hbar * omega / cfg.particle_mass) / c) /
                     (2.0 * std::sqrt(static_cast<double>(n)));
    double cubic_second_moment = 0.0;
    if (b != 0.0) {
        const auto triples = cubic_constraint_triples(n);
        for (const auto& t : triples) {
            // <p_T p_T'> vanishes unless T' is a reordering of (N-k1, N-k2, N-k3).
            std::array<std::int64_t, 3> partner{n - t[0], n - t[1], n - t[2]};
            std::sort(partner.begin(), partner.end());
            std::set<std::array<std::int64_t, 3>> orderings;
            do {
                orderings.insert(partner);
            } while (std::next_permutation(partner.begin(), partner.end()));
            for (const auto& u : orderings) {
                const std::array<MomentumLabel, 6> ops{
                    MomentumLabel{MomentumBasis::fourier, t[0]}, MomentumLabel{MomentumBasis::fourier, t[1]},
                    MomentumLabel{MomentumBasis::fourier, t[2]}, MomentumLabel{MomentumBasis::fourier, u[0]},
                    MomentumLabel{MomentumBasis::fourier, u[1]}, MomentumLabel{MomentumBasis::fourier, u[2]}};
                cubic_second_moment += ev.moment(ops);
            }
        }
    }
    const double var_cubic = b * b * cubic_second_moment;

    OppositeMomentumRates out;
    out.tau_sq_inv = 0.5 * var_quadratic * omega * omega;
    out.tau_prime_sq_inv = 0.5 * var_cubic * omega * omega;
    if (out.tau_prime_sq_inv > 0)
        out.ratio = std::sqrt(out.tau_sq_inv / out.tau_prime_sq_inv);
    else
        out.ratio = out.tau_sq_inv > 0 ? std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::quiet_NaN();

    const double v1 = p1 / m_total;
    const double v2 = p2 / m_total;
    const double gap = (v1 / c - v2 / c) * (v1 / c + v2 / c);
    out.printed_tau_sq_inv = 9.0 / 32.0 * gap * gap * omega * omega;
    const double dv = (v1 - v2) / c;
    out.printed_tau_prime_sq_inv = dv * dv * omega * omega * cfg.hbar * omega / (32.0 * m_total * c * c);
    out.printed_ratio = cfg.n_particles * cfg.particle_mass * (v1 + v2) * (v1 + v2) / (cfg.hbar * omega);
    return out;
}

}  // namespace ringdeco
