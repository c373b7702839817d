#include "gammalim/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gammalim {

namespace {

constexpr double kPi = LogMagnitudeSign::pi();
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640561764; // log(2 pi)/2
constexpr double kLogDoubleMax = 709.782712893384;

// Lanczos rational approximation, g = 607/128, 15 coefficients
// (Godfrey's published table). Relative error ~1e-14 over Re(z) >= 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosCoeff[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(const ComplexScalar& z, long& k_out) noexcept {
    if (z.imag() != 0.0) return false;
    const double x = z.real();
    if (x > 0.0 || x != std::floor(x)) return false;
    // saturate: every double beyond 2^53 is an integer but the index
    // no longer fits the reporting type
    k_out = -x < 9.007199254740992e15 ? static_cast<long>(-x) : 9007199254740992L;
    return true;
}

template <typename Scalar>
Scalar lanczos_series(const Scalar& z) {
    Scalar sum = kLanczosCoeff[0];
    for (int i = 1; i < 15; ++i) sum += kLanczosCoeff[i] / (z + static_cast<double>(i - 1));
    return sum;
}

// log Gamma for Re(z) >= 0.5, continuous (no artificial 2 pi jumps:
// t = z + g - 1/2 stays in the right half plane and the series stays
// clear of the negative real axis there).
ComplexScalar log_gamma_right(const ComplexScalar& z) {
    const ComplexScalar t = z + (kLanczosG - 0.5);
    return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}

double log_gamma_right(double x) {
    const double t = x + (kLanczosG - 0.5);
    return kLogSqrt2Pi + (x - 0.5) * std::log(t) - t + std::log(lanczos_series(x));
}

// sin/cos(pi x) after reducing x mod 2 exactly (fmod) and then by the
// nearest half integer (exact by Sterbenz). |r| <= 0.25 at the call to
// libm, so no accuracy is lost to the pi multiplication.
struct ReducedAngle {
    double r;    // residual, |r| <= 0.25
    int quadrant; // n mod 4 for x = n/2 + r
};

ReducedAngle reduce_half(double x) noexcept {
    const double r2 = std::fmod(x, 2.0); // exact, period of sin(pi x)
    const double n = std::nearbyint(2.0 * r2);
    const double r = r2 - 0.5 * n;
    const int q = ((static_cast<int>(n) % 4) + 4) % 4;
    return {r, q};
}

} // namespace

double sin_pi(double x) noexcept {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    const auto [r, q] = reduce_half(x);
    switch (q) {
        case 0: return std::sin(kPi * r);
        case 1: return std::cos(kPi * r);
        case 2: return -std::sin(kPi * r);
        default: return -std::cos(kPi * r);
    }
}

double cos_pi(double x) noexcept {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    const auto [r, q] = reduce_half(x);
    switch (q) {
        case 0: return std::cos(kPi * r);
        case 1: return -std::sin(kPi * r);
        case 2: return -std::cos(kPi * r);
        default: return std::sin(kPi * r);
    }
}

ComplexScalar sin_pi(const ComplexScalar& z) noexcept {
    if (z.imag() == 0.0) return {sin_pi(z.real()), z.imag() * cos_pi(z.real())};
    const double s = sin_pi(z.real());
    const double c = cos_pi(z.real());
    const double py = kPi * z.imag();
    // exact zeros of s/c must not meet an overflowed cosh/sinh
    const double re = s == 0.0 ? s : s * std::cosh(py);
    const double im = c == 0.0 ? c : c * std::sinh(py);
    return {re, im};
}

ComplexScalar cos_pi(const ComplexScalar& z) noexcept {
    if (z.imag() == 0.0) return {cos_pi(z.real()), -z.imag() * sin_pi(z.real())};
    const double s = sin_pi(z.real());
    const double c = cos_pi(z.real());
    const double py = kPi * z.imag();
    const double re = c == 0.0 ? c : c * std::cosh(py);
    const double im = s == 0.0 ? -s : -s * std::sinh(py);
    return {re, im};
}

namespace {

// log(sin(pi z)) without overflow for any |Im z|. Below the threshold the
// complex sine itself stays inside double range (|sin| <= cosh(100 pi)
// ~ 1e136). Above it, sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
// with the real part reduced so the phase stays accurate.
ComplexScalar log_sin_pi(const ComplexScalar& z) {
    const double y = z.imag();
    if (std::abs(y) <= 100.0) return std::log(sin_pi(z));
    if (y < 0.0) return std::conj(log_sin_pi(std::conj(z)));

    const double m = std::nearbyint(z.real());
    const double xr = z.real() - m; // exact
    const bool odd = std::fmod(std::abs(m), 2.0) == 1.0;
    const ComplexScalar tail =
        std::exp(ComplexScalar(-2.0 * kPi * y, 2.0 * kPi * xr)); // e^{2 i pi z}
    ComplexScalar lg(kPi * y - std::log(2.0),
                     kPi * 0.5 - kPi * xr + (odd ? kPi : 0.0));
    lg += std::log(1.0 - tail);
    return lg;
}

} // namespace

std::optional<PoleProximity> nearest_pole(const ComplexScalar& z) noexcept {
    if (!(z.real() < 0.5)) return std::nullopt;
    // nearest nonnegative k to -Re(z); ceil(x - 1/2) rounds half down,
    // which is the tie-break toward the smaller index
    double k = std::ceil(-z.real() - 0.5);
    if (k < 0.0) k = 0.0;
    if (k >= 9.007199254740992e15) return std::nullopt; // index not representable
    const double dist = std::hypot(z.real() + k, z.imag());
    return PoleProximity{static_cast<long>(k), dist};
}

double log_factorial(long m) {
    if (m < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (m < 2) return 0.0;
    if (m <= 1024) {
        // compensated summation: keeps the absolute error near 1 ulp of
        // the result instead of growing with the term count
        double sum = 0.0, comp = 0.0;
        for (long j = 2; j <= m; ++j) {
            const double term = std::log(static_cast<double>(j)) - comp;
            const double next = sum + term;
            comp = (next - sum) - term;
            sum = next;
        }
        return sum;
    }
    // Stirling series; for m > 1024 the truncation is far below 1 ulp
    const double x = static_cast<double>(m) + 1.0;
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series = inv / 12.0 - inv * inv2 / 360.0 + inv * inv2 * inv2 / 1260.0;
    return (x - 0.5) * std::log(x) - x + kLogSqrt2Pi + series;
}

LogMagnitudeSign residue_at_pole(long k) {
    if (k < 0) throw std::invalid_argument("residue_at_pole: k must be >= 0");
    return LogMagnitudeSign::from_log_and_sign(-log_factorial(k), k % 2 == 0 ? 1 : -1);
}

LogMagnitudeSign log_gamma(const ComplexScalar& z) {
    long k;
    if (is_nonpositive_integer(z, k)) throw PoleError(k);

    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x >= 0.5) return {log_gamma_right(x), 0.0};
        // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        const double s = sin_pi(x);
        const double log_mag = std::log(kPi) - std::log(std::abs(s)) - log_gamma_right(1.0 - x);
        return {log_mag, s > 0.0 ? 0.0 : kPi};
    }

    if (z.real() >= 0.5) {
        const ComplexScalar lg = log_gamma_right(z);
        return {lg.real(), LogMagnitudeSign::reduce_phase(lg.imag())};
    }
    const ComplexScalar lg = std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    return {lg.real(), LogMagnitudeSign::reduce_phase(lg.imag())};
}

ComplexScalar gamma(const ComplexScalar& z) {
    long k;
    if (is_nonpositive_integer(z, k)) throw PoleError(k);

    if (z.imag() == 0.0) {
        const double x = z.real();
        double value;
        if (x >= 0.5) {
            const double t = x + (kLanczosG - 0.5);
            const double expo = (x - 0.5) * std::log(t) - t;
            if (expo > kLogDoubleMax) throw OverflowToLogError();
            value = std::sqrt(2.0 * kPi) * lanczos_series(x) * std::exp(expo);
        } else {
            value = kPi / (sin_pi(x) * std::exp(log_gamma_right(1.0 - x)));
        }
        if (!std::isfinite(value)) throw OverflowToLogError();
        return {value, 0.0};
    }

    if (z.real() >= 0.5) {
        const ComplexScalar t = z + (kLanczosG - 0.5);
        const ComplexScalar expo = (z - 0.5) * std::log(t) - t;
        if (expo.real() > kLogDoubleMax) throw OverflowToLogError();
        return std::sqrt(2.0 * kPi) * lanczos_series(z) * std::exp(expo);
    }
    if (1.0 - z.real() <= 171.0) {
        const ComplexScalar value = kPi / (sin_pi(z) * gamma(1.0 - z));
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            throw OverflowToLogError();
        return value;
    }
    // Gamma(1-z) itself overflows but the reflected value does not have to;
    // assemble it in log form
    const ComplexScalar lg = std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    if (lg.real() > kLogDoubleMax) throw OverflowToLogError();
    return std::exp(lg);
}

EvalMethod EvalMethod::product(long terms) {
    if (terms < 1) throw std::invalid_argument("TruncatedProduct requires N >= 1");
    return {Kind::TruncatedProduct, terms};
}

EvalMethod EvalMethod::quadrature(long nodes) {
    if (nodes < 2) throw std::invalid_argument("Quadrature requires nodes >= 2");
    return {Kind::Quadrature, nodes};
}

ComplexScalar gamma_weierstrass(const ComplexScalar& z, long terms) {
    if (terms < 1) throw std::invalid_argument("gamma_weierstrass: terms must be >= 1");
    long k;
    if (is_nonpositive_integer(z, k) && k <= terms) throw PoleError(k);

    if (z.imag() == 0.0) {
        // literal factor-by-factor form; pow(b, 1) == b keeps the z = 1
        // telescoping exact
        const double x = z.real();
        double prod = 1.0;
        for (long n = 1; n <= terms; ++n) {
            const double dn = static_cast<double>(n);
            prod *= std::pow(1.0 + 1.0 / dn, x) / (1.0 + x / dn);
        }
        return {prod / x, 0.0};
    }

    // complex path: prod (1+1/n)^z telescopes exactly to (N+1)^z, leaving
    // one loop for prod (1+z/n)
    ComplexScalar denom = 1.0;
    for (long n = 1; n <= terms; ++n) denom *= 1.0 + z * (1.0 / static_cast<double>(n));
    const double log_np1 = std::log(static_cast<double>(terms) + 1.0);
    const ComplexScalar lead = std::exp(z * log_np1);
    return lead / (z * denom);
}

ComplexScalar gamma_integral(const ComplexScalar& z, long nodes) {
    if (!(z.real() > 0.0))
        throw DomainError("gamma_integral: the integral requires Re(z) > 0");
    if (nodes < 2) throw std::invalid_argument("gamma_integral: nodes must be >= 2");

    // shift by parts until Re(w) >= 16: the log-axis integrand then decays
    // fast enough on both ends of the fixed window
    const long shift = z.real() >= 16.0 ? 0 : static_cast<long>(std::ceil(16.0 - z.real()));
    const ComplexScalar w = z + static_cast<double>(shift);

    const double s_min = -4.0;
    const double s_max = std::log(3.0 * w.real() + 40.0);
    const double h = (s_max - s_min) / static_cast<double>(nodes - 1);

    ComplexScalar acc = 0.0;
    for (long i = 0; i < nodes; ++i) {
        const double s = s_min + h * static_cast<double>(i);
        const double weight = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
        acc += weight * std::exp(w * s - std::exp(s));
    }
    acc *= h;

    for (long j = 0; j < shift; ++j) acc /= z + static_cast<double>(j);
    return acc;
}

ComplexScalar eval_gamma(const ComplexScalar& z, const EvalMethod& method) {
    switch (method.kind) {
        case EvalMethod::Kind::RationalApprox: return gamma(z);
        case EvalMethod::Kind::TruncatedProduct: return gamma_weierstrass(z, method.param);
        case EvalMethod::Kind::Quadrature: return gamma_integral(z, method.param);
    }
    throw std::logic_error("eval_gamma: unknown method");
}

} // namespace gammalim
