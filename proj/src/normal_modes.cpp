#include "ringdeco/normal_modes.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "ringdeco/model.hpp"

namespace ringdeco {

Eigen::MatrixXcd fourier_matrix(int n, FourierConvention convention)
{
    if (n < 1)
        throw ConfigError("fourier_matrix requires n >= 1");
    const double sign = convention == FourierConvention::momentum ? -1.0 : 1.0;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(n, n);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) {
            // Reduce k*j mod n first so the phase stays accurate for large n.
            const long long kj = (static_cast<long long>(k) * j) % n;
            const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(kj) / n;
            f(k - 1, j - 1) = std::polar(norm, phase);
        }
    }
    return f;
}

Eigen::MatrixXcd bogoliubov_matrix(int n)
{
    if (n < 3 || n % 2 == 0)
        throw ConfigError("bogoliubov_matrix requires odd n >= 3");
    const int dim = n - 1;
    const double h = std::numbers::sqrt2 / 2;
    const std::complex<double> ih{0.0, h};
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 1; j <= dim; ++j) {
        const int partner = n - j;
        if (j <= (n - 1) / 2) {
            w(j - 1, j - 1) = h;
            w(j - 1, partner - 1) = h;
        } else {
            w(j - 1, j - 1) = ih;
            w(j - 1, partner - 1) = -ih;
        }
    }
    return w;
}

}  // namespace ringdeco
