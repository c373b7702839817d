#pragma once

#include <cmath>
#include <complex>

namespace gammalim {

using ComplexScalar = std::complex<double>;

/// Value stored as (log|x|, arg x). Products and quotients of huge/tiny
/// factors reduce to additions on log_mag, so chains of up to 10^6 factors
/// with |log term| <= 700 stay exact in double range.
///
/// phase is kept principal in (-pi, pi]. Real-valued contexts use exactly
/// {0, pi} to encode sign +/-1; the arithmetic below preserves that set
/// (pi + pi reduces to 0 exactly).
struct LogMagnitudeSign {
    double log_mag = 0.0;
    double phase = 0.0;

    static LogMagnitudeSign from_real(double x) {
        return {std::log(std::abs(x)), x < 0.0 ? pi() : 0.0};
    }

    static LogMagnitudeSign from_complex(const ComplexScalar& z) {
        return {std::log(std::abs(z)), std::arg(z)};
    }

    /// sign must be +1 or -1.
    static LogMagnitudeSign from_log_and_sign(double log_mag, int sign) {
        return {log_mag, sign < 0 ? pi() : 0.0};
    }

    ComplexScalar to_complex() const {
        const double m = std::exp(log_mag);
        if (phase == 0.0) return {m, 0.0};
        if (phase == pi()) return {-m, 0.0};
        return {m * std::cos(phase), m * std::sin(phase)};
    }

    /// Collapses phase to a sign; meaningful for real-context values only.
    double to_real() const {
        return sign() * std::exp(log_mag);
    }

    double sign() const { return std::abs(phase) < pi() / 2 ? 1.0 : -1.0; }

    LogMagnitudeSign& operator*=(const LogMagnitudeSign& o) {
        log_mag += o.log_mag;
        phase = reduce_phase(phase + o.phase);
        return *this;
    }

    LogMagnitudeSign& operator/=(const LogMagnitudeSign& o) {
        log_mag -= o.log_mag;
        phase = reduce_phase(phase - o.phase);
        return *this;
    }

    friend LogMagnitudeSign operator*(LogMagnitudeSign a, const LogMagnitudeSign& b) {
        return a *= b;
    }

    friend LogMagnitudeSign operator/(LogMagnitudeSign a, const LogMagnitudeSign& b) {
        return a /= b;
    }

    /// Maps any angle to the principal range (-pi, pi]. Exact on multiples
    /// of pi: n*pi reduces to 0 or pi with no rounding.
    static double reduce_phase(double a) {
        const double r = std::remainder(a, 2.0 * pi());
        return r <= -pi() ? pi() : r;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }
};

} // namespace gammalim
