#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace ringdeco {

enum class FourierConvention {
    momentum,  // exp(-i 2 pi k j / N)
    position,  // exp(+i 2 pi k j / N)
};

enum class MomentumBasis {
    diagonal,  // real normal-mode momenta P_k
    fourier,   // complex Fourier-mode momenta p_k = sum_j conj(W_jk) P_j
};

// One momentum operator of a vacuum moment, k = 1..N-1.
struct MomentumLabel {
    MomentumBasis basis = MomentumBasis::diagonal;
    std::int64_t k = 1;
};

// N x N unitary matrix with F(k-1, j-1) = exp(-+ i 2 pi k j / N) / sqrt(N), k, j = 1..N.
// The last row (k = N) is the centre-of-mass combination.
Eigen::MatrixXcd fourier_matrix(int n, FourierConvention convention = FourierConvention::momentum);

// (N-1) x (N-1) unitary map from the paired Fourier modes q_k, q_{N-k} onto the real
// normal coordinates Q_k. Requires odd N >= 3.
Eigen::MatrixXcd bogoliubov_matrix(int n);

}  // namespace ringdeco
