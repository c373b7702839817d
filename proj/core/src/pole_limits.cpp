#include "gammalim/pole_limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gammalim::poles {

namespace {

constexpr double kPi = LogMagnitudeSign::pi();
constexpr double kNoiseFloorEps = 1e-12; // stop refining below this step size

void validate(const RatioLimitSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("RatioLimitSpec: n must be >= 1");
    if (spec.k < 0) throw std::invalid_argument("RatioLimitSpec: k must be >= 0");
}

} // namespace

int convention_sign(const RatioLimitSpec& spec, SignConvention convention) noexcept {
    if (spec.k == 0) return 1;
    const long exponent =
        convention == SignConvention::PaperTheorem2 ? spec.k : spec.k * (spec.n - 1);
    return exponent % 2 == 0 ? 1 : -1;
}

bool conventions_disagree(long n, long k) noexcept {
    return k >= 1 && n % 2 == 1 && k % 2 == 1;
}

LogMagnitudeSign ratio_limit_closed_form(const RatioLimitSpec& spec,
                                         SignConvention convention) {
    validate(spec);
    const double n = static_cast<double>(spec.n);
    if (spec.k == 0) return LogMagnitudeSign::from_log_and_sign(-std::log(n), 1);
    const double log_mag =
        log_gamma(ComplexScalar(static_cast<double>(spec.k), 0.0)).log_mag -
        2.0 * std::log(n) -
        log_gamma(ComplexScalar(static_cast<double>(spec.n * spec.k), 0.0)).log_mag;
    return LogMagnitudeSign::from_log_and_sign(log_mag, convention_sign(spec, convention));
}

LogMagnitudeSign residue_ratio_oracle(const RatioLimitSpec& spec) {
    validate(spec);
    const double n = static_cast<double>(spec.n);
    if (spec.k == 0) return LogMagnitudeSign::from_log_and_sign(-std::log(n), 1);
    const double log_mag =
        log_factorial(spec.k) - std::log(n) - log_factorial(spec.n * spec.k);
    return LogMagnitudeSign::from_log_and_sign(
        log_mag, convention_sign(spec, SignConvention::ResidueOracle));
}

ComplexScalar ratio_stable(const ComplexScalar& z, long n) {
    if (n < 1) throw std::invalid_argument("ratio_stable: n must be >= 1");
    const double dn = static_cast<double>(n);
    const ComplexScalar nz = dn * z;

    // removable singularity: the ratio extends analytically onto the poles
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        const long k = static_cast<long>(-z.real());
        return residue_ratio_oracle({n, k}).to_complex();
    }

    const auto pp = nearest_pole(z);
    if (pp && pp->distance < 0.5) {
        if (pp->distance <= 1e-15 && dn * pp->distance >= 0.5)
            throw DegenerateError("ratio_stable: z on a pole but n z far from one");
        if (dn * pp->distance < 0.5) {
            // Reflection rewrite in pole-relative coordinates. delta = z + k
            // is exact (Sterbenz), and n*delta rounds relative to delta, so
            // both sines see the pole offset at full precision. Forming n*z
            // first would wipe out the offset with absolute rounding ~nk*eps.
            //   sin(pi z)   = (-1)^k  sin(pi delta)
            //   sin(pi n z) = (-1)^nk sin(pi n delta)
            const double dk = static_cast<double>(pp->pole_index);
            const long nk = static_cast<long>(n) * pp->pole_index;
            const LogMagnitudeSign num_sign{0.0, pp->pole_index % 2 == 0 ? 0.0 : kPi};
            const LogMagnitudeSign den_sign{0.0, nk % 2 == 0 ? 0.0 : kPi};
            if (z.imag() == 0.0) {
                const double delta = z.real() + dk;
                const double ndelta = dn * delta;
                const LogMagnitudeSign num =
                    LogMagnitudeSign::from_real(sin_pi(delta)) * num_sign *
                    log_gamma(ComplexScalar(1.0 + dk - delta, 0.0));
                const LogMagnitudeSign den =
                    LogMagnitudeSign::from_real(sin_pi(ndelta)) * den_sign *
                    log_gamma(ComplexScalar(1.0 + dn * dk - ndelta, 0.0));
                return {(num / den).to_real(), 0.0};
            }
            const ComplexScalar delta = z + dk;
            const ComplexScalar ndelta = dn * delta;
            const LogMagnitudeSign num = LogMagnitudeSign::from_complex(sin_pi(delta)) *
                                         num_sign * log_gamma(1.0 + dk - delta);
            const LogMagnitudeSign den = LogMagnitudeSign::from_complex(sin_pi(ndelta)) *
                                         den_sign * log_gamma(1.0 + dn * dk - ndelta);
            return (num / den).to_complex();
        }
    }

    // far field: plain log-space quotient
    return (log_gamma(nz) / log_gamma(z)).to_complex();
}

LimitEstimate extrapolate_sequence(const std::function<double(double)>& f,
                                   double eps0, int steps) {
    if (!(eps0 > 0.0) || eps0 > 0.1)
        throw std::invalid_argument("extrapolate: eps0 must lie in (0, 0.1]");
    if (steps < 3) throw std::invalid_argument("extrapolate: steps must be >= 3");

    LimitEstimate est;
    double eps = eps0;
    for (int j = 0; j < steps && eps >= kNoiseFloorEps; ++j, eps *= 0.5)
        est.steps.emplace_back(eps, f(eps));
    const int m = static_cast<int>(est.steps.size());
    if (m < 3) throw std::invalid_argument("extrapolate: eps0 too close to the noise floor");

    // convergence-order probe from the raw first differences
    {
        std::vector<double> orders;
        for (int j = 0; j + 2 < m; ++j) {
            const double d0 = est.steps[j].second - est.steps[j + 1].second;
            const double d1 = est.steps[j + 1].second - est.steps[j + 2].second;
            if (d1 != 0.0 && std::abs(d0) > std::abs(d1))
                orders.push_back(std::log2(std::abs(d0 / d1)));
        }
        if (!orders.empty()) {
            std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
            est.order = orders[orders.size() / 2];
        }
    }

    // broken-evaluator tripwire: first differences must contract somewhere
    {
        int growth = 0;
        double scale = 0.0;
        for (int j = 0; j + 1 < m; ++j)
            scale = std::max(scale, std::abs(est.steps[j].second));
        const double noise = 1e4 * 2.2e-16 * std::max(scale, 1e-300);
        for (int j = 0; j + 2 < m; ++j) {
            const double d0 = std::abs(est.steps[j].second - est.steps[j + 1].second);
            const double d1 = std::abs(est.steps[j + 1].second - est.steps[j + 2].second);
            if (d0 > noise && d1 > d0 * 1.2) ++growth;
        }
        if (growth == m - 2 && m >= 4)
            throw ConvergenceError(
                "extrapolate: step differences grow monotonically; evaluator is broken");
    }

    // Richardson for a halving schedule with leading error order 1:
    // column c removes the eps^c term
    std::vector<double> column(m);
    for (int j = 0; j < m; ++j) column[j] = est.steps[j].second;
    double previous_top = column[0];
    double value = column[0];
    double last_change = std::abs(column.back() - column.front());
    for (int c = 1; c < m; ++c) {
        const double w = std::pow(2.0, c);
        for (int j = 0; j + c < m; ++j)
            column[j] = (w * column[j + 1] - column[j]) / (w - 1.0);
        const double top = column[0];
        last_change = std::abs(top - previous_top);
        previous_top = top;
        value = top;
    }
    est.value = LogMagnitudeSign::from_real(value);
    est.achieved_tol = last_change;
    return est;
}

LimitEstimate limit_extrapolate(const RatioLimitSpec& spec, double eps0, int steps) {
    validate(spec);
    const double minus_k = -static_cast<double>(spec.k);
    return extrapolate_sequence(
        [&](double eps) {
            return ratio_stable(ComplexScalar(minus_k + eps, 0.0), spec.n).real();
        },
        eps0, steps);
}

double reflection_sign_limit(long n, long r, long k, double eps) {
    if (n < 2 || r < 1 || r >= n || k < 1)
        throw std::invalid_argument("reflection_sign_limit: need n >= 2, 1 <= r < n, k >= 1");
    if (!(eps > 0.0) || eps > 0.01)
        throw std::invalid_argument("reflection_sign_limit: eps must lie in (0, 0.01]");
    const double rn = static_cast<double>(r) / static_cast<double>(n);
    const double limit = (k % 2 == 0 ? 1.0 : -1.0) * kPi / sin_pi(rn);
    double worst = 0.0;
    for (const double w : {static_cast<double>(k) - eps, static_cast<double>(k) + eps})
        worst = std::max(worst, std::abs(kPi / sin_pi(rn - w) - limit));
    return worst;
}

LimitEstimate theorem2_product_limit(long n, long k, double eps0, int steps) {
    if (n < 2 || k < 1)
        throw std::invalid_argument("theorem2_product_limit: need n >= 2, k >= 1");
    const double dk = static_cast<double>(k);
    return extrapolate_sequence(
        [&](double eps) {
            const double w = dk - eps;
            LogMagnitudeSign prod{0.0, 0.0};
            for (long r = 1; r < n; ++r) {
                const double rn = static_cast<double>(r) / static_cast<double>(n);
                prod *= log_gamma(ComplexScalar(-w + rn, 0.0));
                prod *= log_gamma(ComplexScalar(1.0 + w - rn, 0.0));
            }
            return prod.to_real();
        },
        eps0, steps);
}

} // namespace gammalim::poles
