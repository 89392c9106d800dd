#include "ringdeco/model.hpp"

#include <array>
#include <cmath>
#include <numbers>

// J0 in three bands:
//   |x| < 8        power series (largest term ~114, so cancellation costs < 1e-13)
//   8 <= |x| < 25  Miller backward recurrence normalised by J0 + 2 sum J_2k = 1
//   |x| >= 25      Hankel asymptotic expansion (optimal truncation error ~ e^{-2x})

namespace ringdeco {

namespace {

double j0_series(double x)
{
    const double y = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= y / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && std::abs(term) < 1e-18)
            break;
    }
    return sum;
}

double j0_miller(double x)
{
    int start = static_cast<int>(x) + 40;
    if (start % 2 != 0)
        ++start;
    double next = 0.0;     // J_{n+1}
    double current = 1e-300; // J_n, arbitrary seed
    double norm = 0.0;
    double j0 = 0.0;
    for (int n = start; n > 0; --n) {
        const double previous = 2.0 * n / x * current - next;  // J_{n-1}
        next = current;
        current = previous;
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
        if ((n - 1) % 2 == 0 && n - 1 > 0)
            norm += 2.0 * current;
    }
    j0 = current;
    norm += j0;
    return j0 / norm;
}

double j0_asymptotic(double x)
{
    // a_k = prod_{j<=k} (2j-1)^2 / (k! (8x)^k)
    // P = sum_{k even} (-1)^{k/2} a_k,  Q = sum_{k odd} (-1)^{(k+1)/2} a_k
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = a * odd * odd / (8.0 * k * x);
        if (next > a)
            break;
        a = next;
        if (k % 2 == 0)
            p += ((k / 2) % 2 == 0 ? a : -a);
        else
            q += (((k + 1) / 2) % 2 == 0 ? a : -a);
        if (a < 1e-17)
            break;
    }
    // cos(x - pi/4) = (cos x + sin x)/sqrt2, sin(x - pi/4) = (sin x - cos x)/sqrt2
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double cos_chi = (c + s) * std::numbers::sqrt2 / 2;
    const double sin_chi = (s - c) * std::numbers::sqrt2 / 2;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j0(double x)
{
    x = std::abs(x);
    if (x < 8.0)
        return j0_series(x);
    if (x < 25.0)
        return j0_miller(x);
    return j0_asymptotic(x);
}

double one_minus_bessel_j0(double x)
{
    x = std::abs(x);
    if (x >= 1.0)
        return 1.0 - bessel_j0(x);
    // Series of J0 without its constant term, negated.
    const double y = -0.25 * x * x;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= y / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return -sum;
}

}  // namespace ringdeco
