#pragma once

// Test-only oracles, independent of the library's evaluation paths.
// Extended precision (80-bit long double, exact rationals) is allowed
// here and nowhere else.

#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;

/// log(m!) by compensated summation in extended precision.
inline long double log_factorial_ld(long m) {
    long double sum = 0.0L, comp = 0.0L;
    for (long j = 2; j <= m; ++j) {
        const long double term = std::log(static_cast<long double>(j)) - comp;
        const long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

/// (-1)^k / k! for small k, exact in extended precision.
inline long double residue_ld(long k) {
    long double f = 1.0L;
    for (long j = 2; j <= k; ++j) f *= static_cast<long double>(j);
    return (k % 2 == 0 ? 1.0L : -1.0L) / f;
}

/// Gamma(1/4) from the arithmetic-geometric mean:
///   Gamma(1/4)^2 = 2 sqrt(2 pi) pi / agm(1, sqrt 2)
/// (lemniscate constant route; quadratic convergence, 8 iterations is
/// far past extended precision).
inline long double gamma_quarter_ld() {
    long double a = 1.0L, b = std::sqrt(2.0L);
    for (int i = 0; i < 8; ++i) {
        const long double an = 0.5L * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::sqrt(2.0L * std::sqrt(2.0L * kPiL) * kPiL / a);
}

/// sin(pi x) in extended precision with the same exact range reduction
/// the library uses (fmod by 2, then nearest half-integer).
inline long double sin_pi_ld(long double x) {
    const long double r2 = std::fmod(x, 2.0L);
    const long double n = std::nearbyint(2.0L * r2);
    const long double r = r2 - 0.5L * n;
    const int q = ((static_cast<int>(n) % 4) + 4) % 4;
    switch (q) {
        case 0: return std::sin(kPiL * r);
        case 1: return std::cos(kPiL * r);
        case 2: return -std::sin(kPiL * r);
        default: return -std::cos(kPiL * r);
    }
}

inline long double cos_pi_ld(long double x) {
    return sin_pi_ld(x + 0.5L);
}

/// Chord length |1 - e^(2 pi i k / n)| in extended precision.
inline long double chord_ld(long n, long k) {
    const long double t = 2.0L * kPiL * static_cast<long double>(k) / static_cast<long double>(n);
    const long double re = 1.0L - std::cos(t);
    const long double im = std::sin(t);
    return std::sqrt(re * re + im * im);
}

/// Richardson extrapolation (halving schedule, leading order 1) over a
/// complex-valued step table; used for the imaginary-axis approach-path
/// diagnostic.
inline std::complex<double> richardson_complex(std::vector<std::complex<double>> col) {
    const std::size_t m = col.size();
    for (std::size_t c = 1; c < m; ++c) {
        const double w = std::pow(2.0, static_cast<double>(c));
        for (std::size_t j = 0; j + c < m; ++j)
            col[j] = (w * col[j + 1] - col[j]) / (w - 1.0);
    }
    return col[0];
}

} // namespace oracles
