#include "gammalim/identities.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gammalim::identities {

namespace {

constexpr double kPi = LogMagnitudeSign::pi();
constexpr double kLog2Pi = 1.8378770664093454835606594728112353;

// direct multiplication is fine below this factor count; above it partial
// products can dip past double range (the prefix of a roots-of-unity
// product reaches exp(-0.16 n))
constexpr long kLogSpaceCutover = 30;

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double distance_to_integers(const ComplexScalar& z) {
    return std::hypot(z.real() - std::nearbyint(z.real()), z.imag());
}

std::string format_complex(const ComplexScalar& z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

// |exp(d) - 1| for a complex log-space difference d
double expm1_abs(const LogMagnitudeSign& d) {
    const double m = std::exp(d.log_mag);
    return std::hypot(m * std::cos(d.phase) - 1.0, m * std::sin(d.phase));
}

} // namespace

const char* identity_name(IdentityId id) noexcept {
    switch (id) {
        case IdentityId::Reflection: return "reflection";
        case IdentityId::SineProduct: return "sine-product";
        case IdentityId::GaussMultiplication: return "gauss";
        case IdentityId::GammaFractionProduct: return "gamma-fraction-product";
        case IdentityId::RootsOfUnityProduct: return "roots-of-unity";
        case IdentityId::ChordLength: return "chord-length";
    }
    return "?";
}

RootOfUnity root_of_unity(long n, long k) {
    if (n < 2 || k < 0 || k >= n)
        throw std::invalid_argument("root_of_unity: need n >= 2, 0 <= k < n");
    const double t = 2.0 * static_cast<double>(k) / static_cast<double>(n);
    return {n, k, {cos_pi(t), sin_pi(t)}};
}

double reflection_residual(const ComplexScalar& xi) {
    if (xi.imag() == 0.0 && xi.real() == std::floor(xi.real())) {
        const double x = xi.real();
        throw PoleError(static_cast<long>(x <= 0.0 ? -x : x - 1.0),
                        "reflection_residual: xi must not be an integer");
    }
    const ComplexScalar lhs = gamma(xi) * gamma(1.0 - xi) * sin_pi(xi) / kPi;
    return std::abs(lhs - 1.0);
}

LogMagnitudeSign sine_product(long n) {
    if (n < 2) throw std::invalid_argument("sine_product: n must be >= 2");
    KahanSum acc;
    for (long k = 1; k < n; ++k)
        acc.add(std::log(sin_pi(static_cast<double>(k) / static_cast<double>(n))));
    return {acc.sum, 0.0};
}

ComplexScalar roots_of_unity_product(long n) {
    if (n < 2) throw std::invalid_argument("roots_of_unity_product: n must be >= 2");
    if (n - 1 <= kLogSpaceCutover) {
        ComplexScalar prod = 1.0;
        for (long k = 1; k < n; ++k) prod *= 1.0 - root_of_unity(n, k).value;
        return prod;
    }
    KahanSum log_mag;
    double phase = 0.0;
    for (long k = 1; k < n; ++k) {
        const ComplexScalar f = 1.0 - root_of_unity(n, k).value;
        log_mag.add(std::log(std::abs(f)));
        phase = LogMagnitudeSign::reduce_phase(phase + std::arg(f));
    }
    return LogMagnitudeSign{log_mag.sum, phase}.to_complex();
}

double chord_length_residual(long n, long k) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument("chord_length_residual: need n >= 2, 1 <= k < n");
    const ComplexScalar omega = root_of_unity(n, k).value;
    const double chord = std::hypot(1.0 - omega.real(), omega.imag());
    return std::abs(chord - 2.0 * sin_pi(static_cast<double>(k) / static_cast<double>(n)));
}

double gauss_residual(const ComplexScalar& z, long n) {
    if (n < 1) throw std::invalid_argument("gauss_residual: n must be >= 1");
    const ComplexScalar nz = static_cast<double>(n) * z;
    if (nz.imag() == 0.0 && nz.real() <= 0.0 && nz.real() == std::floor(nz.real()))
        throw PoleError(static_cast<long>(-nz.real()), "gauss_residual: n z is a pole");

    LogMagnitudeSign lhs{0.0, 0.0};
    for (long k = 0; k < n; ++k) {
        const ComplexScalar arg = z + static_cast<double>(k) / static_cast<double>(n);
        if (arg.imag() == 0.0 && arg.real() <= 0.0 && arg.real() == std::floor(arg.real()))
            throw PoleError(static_cast<long>(-arg.real()),
                            "gauss_residual: factor k=" + std::to_string(k) + " hits a pole");
        lhs *= log_gamma(arg);
    }

    const double ln_n = std::log(static_cast<double>(n));
    LogMagnitudeSign rhs = log_gamma(nz);
    rhs.log_mag += 0.5 * (n - 1) * kLog2Pi + (0.5 - static_cast<double>(n) * z.real()) * ln_n;
    rhs.phase = LogMagnitudeSign::reduce_phase(rhs.phase - static_cast<double>(n) * z.imag() * ln_n);

    return expm1_abs(lhs / rhs);
}

double gamma_fraction_product_residual(long n) {
    if (n < 2) throw std::invalid_argument("gamma_fraction_product_residual: n must be >= 2");
    KahanSum acc;
    for (long k = 1; k < n; ++k)
        acc.add(log_gamma(ComplexScalar(
                    static_cast<double>(k) / static_cast<double>(n), 0.0))
                    .log_mag);
    const double closed = 0.5 * (n - 1) * kLog2Pi - 0.5 * std::log(static_cast<double>(n));
    return std::abs(std::expm1(acc.sum - closed));
}

namespace {

// Deterministic complex draws: same seed, same grid, every run.
class PointSource {
public:
    explicit PointSource(std::uint32_t seed) : rng_(seed) {}

    ComplexScalar in_disk(double radius) {
        std::uniform_real_distribution<double> u(-radius, radius);
        for (;;) {
            const ComplexScalar z{u(rng_), u(rng_)};
            if (std::abs(z) <= radius) return z;
        }
    }

private:
    std::mt19937 rng_;
};

IdentityReport make_report(IdentityId id, std::string grid, double max_resid,
                           double threshold, std::string worst) {
    IdentityReport r;
    r.identity_id = id;
    r.grid = std::move(grid);
    r.max_rel_residual = max_resid;
    r.threshold = threshold;
    r.pass = max_resid <= threshold;
    r.worst_point = std::move(worst);
    return r;
}

IdentityReport check_reflection(const CheckOptions& opts) {
    const long points = opts.n_max > 0 ? opts.n_max : 1000;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-10;
    PointSource src(0x9e3779b9u);
    double worst = 0.0;
    ComplexScalar worst_xi;
    for (long i = 0; i < points; ++i) {
        ComplexScalar xi = src.in_disk(10.0);
        while (distance_to_integers(xi) < 1e-2) xi = src.in_disk(10.0);
        const double r = reflection_residual(xi);
        if (r > worst) {
            worst = r;
            worst_xi = xi;
        }
    }
    std::ostringstream grid;
    grid << points << " random pts, |xi|<=10, int-dist>=1e-2";
    return make_report(IdentityId::Reflection, grid.str(), worst, threshold,
                       format_complex(worst_xi));
}

IdentityReport check_sine_product(const CheckOptions& opts) {
    const long n_max = opts.n_max > 0 ? opts.n_max : 10000;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-10;
    double worst = 0.0;
    long worst_n = 0;
    for (long n = 2; n <= n_max; ++n) {
        const double closed =
            std::log(static_cast<double>(n)) - static_cast<double>(n - 1) * std::log(2.0);
        // residual in log space; |closed| ~ n log 2 so this is the relative
        // error of the represented value's exponent
        const double r = std::abs(sine_product(n).log_mag - closed) /
                         std::max(1.0, std::abs(closed));
        if (r > worst) {
            worst = r;
            worst_n = n;
        }
    }
    std::ostringstream grid;
    grid << "n in [2," << n_max << "], log space";
    return make_report(IdentityId::SineProduct, grid.str(), worst, threshold,
                       "n=" + std::to_string(worst_n));
}

IdentityReport check_roots_of_unity(const CheckOptions& opts) {
    const long n_max = opts.n_max > 0 ? opts.n_max : 10000;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-10;
    double worst = 0.0;
    long worst_n = 0;
    for (long n = 2; n <= n_max; ++n) {
        const ComplexScalar p = roots_of_unity_product(n);
        const double r = std::abs(p - static_cast<double>(n)) / static_cast<double>(n);
        if (r > worst) {
            worst = r;
            worst_n = n;
        }
    }
    std::ostringstream grid;
    grid << "n in [2," << n_max << "]";
    return make_report(IdentityId::RootsOfUnityProduct, grid.str(), worst, threshold,
                       "n=" + std::to_string(worst_n));
}

IdentityReport check_chord_length(const CheckOptions& opts) {
    const long n_cap = opts.n_max > 0 ? opts.n_max : 100;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-13;
    double worst = 0.0;
    std::string worst_at;
    auto run_n = [&](long n) {
        for (long k = 1; k < n; ++k) {
            const double r = chord_length_residual(n, k);
            if (r > worst) {
                worst = r;
                worst_at = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
            }
        }
    };
    for (long n = 2; n <= n_cap; ++n) run_n(n);
    if (opts.n_max <= 0) run_n(1000);
    std::ostringstream grid;
    grid << "exhaustive k, n in [2," << n_cap << "]";
    if (opts.n_max <= 0) grid << " and n=1000";
    return make_report(IdentityId::ChordLength, grid.str(), worst, threshold, worst_at);
}

IdentityReport check_gauss(const CheckOptions& opts) {
    const long n_max = opts.single_n > 0 ? opts.single_n
                     : opts.n_max > 0    ? opts.n_max
                                         : 12;
    const long n_min = opts.single_n > 0 ? opts.single_n : 1;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-10;
    PointSource src(0x51a7b2c4u);
    double worst = 0.0;
    std::string worst_at;
    for (long n = n_min; n <= n_max; ++n) {
        for (int i = 0; i < 100; ++i) {
            ComplexScalar z;
            for (;;) {
                z = src.in_disk(5.0);
                bool ok = distance_to_integers(static_cast<double>(n) * z) >= 1e-2;
                for (long k = 0; ok && k < n; ++k) {
                    const ComplexScalar arg =
                        z + static_cast<double>(k) / static_cast<double>(n);
                    if (arg.real() < 0.5 && distance_to_integers(arg) < 1e-2) ok = false;
                }
                if (ok) break;
            }
            const double r = gauss_residual(z, n);
            if (r > worst) {
                worst = r;
                worst_at = "n=" + std::to_string(n) + ", z=" + format_complex(z);
            }
        }
    }
    std::ostringstream grid;
    grid << "n in [" << n_min << "," << n_max << "], 100 random |z|<=5 each";
    return make_report(IdentityId::GaussMultiplication, grid.str(), worst, threshold, worst_at);
}

IdentityReport check_gamma_fraction(const CheckOptions& opts) {
    const long n_max = opts.n_max > 0 ? opts.n_max : 500;
    const double threshold = opts.tol_override > 0 ? opts.tol_override : 1e-10;
    double worst = 0.0;
    long worst_n = 0;
    for (long n = 2; n <= n_max; ++n) {
        const double r = gamma_fraction_product_residual(n);
        if (r > worst) {
            worst = r;
            worst_n = n;
        }
    }
    std::ostringstream grid;
    grid << "n in [2," << n_max << "], log space";
    return make_report(IdentityId::GammaFractionProduct, grid.str(), worst, threshold,
                       "n=" + std::to_string(worst_n));
}

} // namespace

IdentityReport check_identity(IdentityId id, const CheckOptions& opts) {
    switch (id) {
        case IdentityId::Reflection: return check_reflection(opts);
        case IdentityId::SineProduct: return check_sine_product(opts);
        case IdentityId::GaussMultiplication: return check_gauss(opts);
        case IdentityId::GammaFractionProduct: return check_gamma_fraction(opts);
        case IdentityId::RootsOfUnityProduct: return check_roots_of_unity(opts);
        case IdentityId::ChordLength: return check_chord_length(opts);
    }
    throw std::invalid_argument("check_identity: unknown identity");
}

std::vector<IdentityReport> check_all(const CheckOptions& opts) {
    return {
        check_identity(IdentityId::Reflection, opts),
        check_identity(IdentityId::SineProduct, opts),
        check_identity(IdentityId::GaussMultiplication, opts),
        check_identity(IdentityId::GammaFractionProduct, opts),
        check_identity(IdentityId::RootsOfUnityProduct, opts),
        check_identity(IdentityId::ChordLength, opts),
    };
}

} // namespace gammalim::identities
